// disent: command-line front end (check, figure1, figure2, verify).

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <locale>
#include <sstream>

#include "disent/channel.hpp"
#include "disent/error.hpp"
#include "disent/frontier.hpp"
#include "disent/separability.hpp"
#include "disent/verify.hpp"

using namespace disent;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInconsistent = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(12) << v;
    return os.str();
}

// Explicit --out wins, then $DISENT_OUTPUT_DIR/<default_name>, then stdout.
void emit(const std::string& text, const std::string& out, const std::string& default_name) {
    std::filesystem::path path = out;
    if (path.empty()) {
        if (const char* dir = std::getenv("DISENT_OUTPUT_DIR"); dir && *dir) path = std::filesystem::path(dir) / default_name;
    }
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << text;
    if (!f.flush()) throw std::runtime_error("write to " + path.string() + " failed");
    std::cerr << "wrote " << path.string() << "\n";
}

json matrix_json(const Matrix4c& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

json machine_json(const MachineConfig& c) {
    return {{"eta", c.eta()}, {"lambda", c.lambda()}, {"Lambda", c.Lambda()}};
}

// --- check ---

struct CheckArgs {
    double alpha = 1;
    std::optional<double> eta_x, eta_y;
    double lambda_x = 0, lambda_y = 0;
    double tol = 1e-8;
};

int run_check(const CheckArgs& a, const CLI::App& cmd) {
    if (!a.eta_y) throw UsageError("--eta-y is required");
    if (!a.eta_x && cmd.count("--lambda-x")) throw UsageError("--lambda-x needs --eta-x");
    if (!(a.tol > 0)) throw UsageError("--tol must be positive");

    const auto st = TwoQubitPureState::from_alpha(a.alpha);
    std::optional<MachineConfig> x;
    if (a.eta_x) x = MachineConfig(*a.eta_x, a.lambda_x);
    const MachineConfig y(*a.eta_y, a.lambda_y);
    for (const auto& [name, cfg] : {std::pair{"x", x}, std::pair{"y", std::optional<MachineConfig>(y)}}) {
        if (cfg && !gram_feasible(build_gram(*cfg)).psd) {
            throw DomainError(std::string("machine ") + name + " is infeasible: lambda^2 > (1 - eta) / (1 + eta)");
        }
    }

    const CrossValidation cv = cross_validate(st, x, y, a.tol);
    json out;
    out["case"] = to_string(cv.tag);
    out["alpha"] = st.alpha();
    out["beta"] = st.beta();
    out["schmidt_product"] = st.schmidt_product();
    out["machine_x"] = x ? machine_json(*x) : json(nullptr);
    out["machine_y"] = machine_json(y);
    out["output"] = matrix_json(cv.output);
    out["conditions"] = {{"values", cv.conditions.values}, {"satisfied", cv.conditions.satisfied()}};
    out["ppt"] = {{"separable", cv.verdict.ppt}, {"min_pt_eigenvalue", cv.verdict.min_pt_eigenvalue}};
    try {
        const ShrinkFit fit = reduced_shrink_factors(pure_state_density(st), cv.output);
        out["shrink_factors"] = {{"eta_x", fit.eta_x},
                                 {"eta_y", fit.eta_y},
                                 {"residual_x", fit.residual_x},
                                 {"residual_y", fit.residual_y}};
    } catch (const DegenerateInput& e) {
        out["shrink_factors"] = nullptr;
        out["shrink_factors_note"] = e.what();
    }
    out["agree"] = cv.agree;
    std::cout << out.dump(2) << "\n";
    if (!cv.agree) {
        std::cerr << "inconsistency: conditions " << (cv.conditions.satisfied() ? "satisfied" : "violated")
                  << " but PPT " << (cv.verdict.ppt ? "true" : "false") << "\n";
        return kExitInconsistent;
    }
    return kExitOk;
}

// --- scans ---

struct ScanArgs {
    std::size_t grid_size = 21;
    std::size_t s_points = 2001;
    double tol = kBisectionTol;
    std::string pairs;
    std::vector<double> eta_x;
    std::string out;
    std::string format = "csv";
};

std::string scan_table(const std::vector<ScanRow>& rows, bool figure1, bool as_json) {
    if (as_json) {
        json arr = json::array();
        for (const auto& r : rows) {
            json o;
            if (figure1) {
                o = {{"lambda_sq", r.abscissa}, {"eta_max", r.ordinate}, {"grid_n", r.grid_n}, {"tol", r.tol}};
            } else {
                o = {{"lambda_x", r.lambda_x}, {"lambda_y", r.lambda_y}, {"eta_x", r.abscissa}, {"eta_y_max", r.ordinate}};
            }
            o["binding_s"] = std::isnan(r.binding_s) ? json(nullptr) : json(r.binding_s);
            arr.push_back(o);
        }
        return arr.dump(2) + "\n";
    }
    std::string text = figure1 ? "lambda_sq,eta_max,binding_s,grid_n,tol\n" : "lambda_x,lambda_y,eta_x,eta_y_max,binding_s\n";
    for (const auto& r : rows) {
        if (figure1) {
            text += format_number(r.abscissa) + "," + format_number(r.ordinate) + "," + format_number(r.binding_s) + "," +
                    std::to_string(r.grid_n) + "," + format_number(r.tol) + "\n";
        } else {
            text += format_number(r.lambda_x) + "," + format_number(r.lambda_y) + "," + format_number(r.abscissa) + "," +
                    format_number(r.ordinate) + "," + format_number(r.binding_s) + "\n";
        }
    }
    return text;
}

void check_scan_args(const ScanArgs& a) {
    if (a.s_points < 2) throw UsageError("--s-points must be at least 2");
    if (!(a.tol > 0 && a.tol < 0.5)) throw UsageError("--tol must lie in (0, 0.5)");
}

int run_figure1(const ScanArgs& a) {
    check_scan_args(a);
    if (a.grid_size < 2) throw UsageError("--grid-size must be at least 2");
    const auto lambda_sq = figure1_default_grid(a.grid_size);
    const auto rows = figure1_scan(lambda_sq, UniversalityGrid::uniform(a.s_points), a.tol);
    emit(scan_table(rows, true, a.format == "json"), a.out, "figure1." + a.format);
    return kExitOk;
}

// "lx,ly;lx,ly;..."
std::vector<LambdaPair> parse_pairs(const std::string& text) {
    std::vector<LambdaPair> pairs;
    std::istringstream items(text);
    std::string item;
    while (std::getline(items, item, ';')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        std::istringstream is(item);
        is.imbue(std::locale::classic());
        double lx = 0, ly = 0;
        char comma = 0;
        if (!(is >> lx >> comma >> ly) || comma != ',' || !(is >> std::ws).eof()) {
            throw UsageError("bad lambda pair '" + item + "', expected lx,ly");
        }
        pairs.emplace_back(lx, ly);
    }
    if (pairs.empty()) throw UsageError("--pairs is empty");
    return pairs;
}

int run_figure2(const ScanArgs& a, bool pairs_given) {
    check_scan_args(a);
    const auto pairs = pairs_given ? parse_pairs(a.pairs) : figure2_default_pairs();
    const auto eta_x = a.eta_x.empty() ? figure2_default_eta_x() : a.eta_x;
    for (const auto& [lx, ly] : pairs) {
        if (!(std::abs(lx) <= 1 && std::abs(ly) <= 1)) throw UsageError("lambda values must lie in [-1, 1]");
    }
    for (double e : eta_x) {
        if (!(e > 0 && e <= 1)) throw UsageError("eta_x values must lie in (0, 1]");
    }
    const auto rows = figure2_scan(eta_x, pairs, UniversalityGrid::uniform(a.s_points), a.tol);
    emit(scan_table(rows, false, a.format == "json"), a.out, "figure2." + a.format);
    return kExitOk;
}

int run_verify_cmd(const std::string& suite, std::uint64_t seed) {
    const VerifyReport report = run_verify(suite == "full" ? SuiteSize::full : SuiteSize::quick, seed);
    std::cout << "verify suite=" << suite << " seed=" << seed << "\n";
    for (const auto& s : report.suites) {
        std::cout << (s.passed ? "PASS " : "FAIL ") << std::left << std::setw(20) << s.name << " n=" << s.count
                  << " max_residual=" << format_number(s.max_residual) << " tol=" << format_number(s.tolerance);
        if (!s.note.empty()) std::cout << "  [" << s.note << "]";
        std::cout << "\n";
    }
    std::cout << (report.passed() ? "all suites passed" : "some suites failed") << "\n";
    return report.passed() ? kExitOk : kExitInconsistent;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Universal disentangling machines for two-qubit states"};
    app.require_subcommand(1);

    CheckArgs check;
    auto* check_cmd = app.add_subcommand("check", "Output, conditions and PPT verdict for one input and machine pair");
    check_cmd->add_option("--alpha", check.alpha, "Schmidt coefficient alpha in [0, 1]")->required();
    check_cmd->add_option("--eta-x", check.eta_x, "reduction factor of the x machine (omit for the TA case)");
    check_cmd->add_option("--eta-y", check.eta_y, "reduction factor of the y machine")->required();
    check_cmd->add_option("--lambda-x", check.lambda_x, "overlap parameter of the x machine");
    check_cmd->add_option("--lambda-y", check.lambda_y, "overlap parameter of the y machine");
    check_cmd->add_option("--tol", check.tol, "PPT tolerance")->capture_default_str();

    ScanArgs scan;
    auto* fig1 = app.add_subcommand("figure1", "eta_max of the symmetric machine versus lambda^2 (CSV)");
    fig1->add_option("--grid-size", scan.grid_size, "number of lambda^2 points on [0, 1]")->capture_default_str();

    auto* fig2 = app.add_subcommand("figure2", "eta_y_max versus eta_x for lambda pairs (CSV)");
    fig2->add_option("--pairs", scan.pairs, "lambda pairs as \"lx,ly;lx,ly\" (default: the four reference pairs)");
    fig2->add_option("--eta-x", scan.eta_x, "eta_x grid, comma separated (default 0.4..1.0 step 0.1)")->delimiter(',');

    for (auto* cmd : {fig1, fig2}) {
        cmd->add_option("--s-points", scan.s_points, "Schmidt-product grid size")->capture_default_str();
        cmd->add_option("--tol", scan.tol, "bisection tolerance on eta")->capture_default_str();
        cmd->add_option("--out", scan.out, "output file (default: $DISENT_OUTPUT_DIR or stdout)");
        cmd->add_option("--format", scan.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    }

    std::string suite = "quick";
    std::uint64_t seed = 1;
    auto* verify = app.add_subcommand("verify", "Run the property suites");
    verify->add_option("--suite", suite, "quick or full")->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
    verify->add_option("--seed", seed, "random seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*check_cmd) return run_check(check, *check_cmd);
        if (*fig1) return run_figure1(scan);
        if (*fig2) return run_figure2(scan, fig2->count("--pairs") > 0);
        if (*verify) return run_verify_cmd(suite, seed);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInconsistent;
    }
    return kExitUsage;
}
