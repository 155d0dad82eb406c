// Command-line front end for the uqsd solver library. Links the C API
// only; all numerics live behind include/uqsd.h.
//
// Verbs:
//   solve <file>    closed-form solution document (JSON) for an ensemble file
//   oracle <file>   derivative-free numeric solution document
//   sweep-theta     polar-angle sweep of the three-state example family (CSV)
//   sweep-eta       prior sweep of the same family at fixed geometry (CSV)
//
// Exit codes: 0 success, 1 parse error, 2 validation error, 3 unsupported
// analytic case without --fallback-oracle, 4 verification failure.

#include "uqsd.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitParse = 1;
constexpr int kExitValidation = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitVerification = 4;

constexpr double kPi = 3.14159265358979323846;

struct CliError {
    int exit_code;
    std::string message;
};

[[noreturn]] void die(int exit_code, const std::string& message) {
    throw CliError{exit_code, message};
}

struct EnsembleDocument {
    std::string label;
    int n = 0;
    int dim = 0;
    std::vector<double> states_reim; // 2 * n * dim
    std::vector<double> priors;
};

EnsembleDocument parse_ensemble_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) die(kExitParse, "cannot open input file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        die(kExitParse, std::string("JSON parse error in ") + path + ": " + e.what());
    }

    EnsembleDocument out;
    if (!doc.is_object()) die(kExitParse, "top-level value must be an object");
    if (doc.contains("label")) {
        if (!doc["label"].is_string()) die(kExitParse, "label: expected a string");
        out.label = doc["label"].get<std::string>();
    }
    if (!doc.contains("states") || !doc["states"].is_array() || doc["states"].empty())
        die(kExitParse, "states: expected a non-empty array of states");

    const auto& states = doc["states"];
    out.n = static_cast<int>(states.size());
    for (int i = 0; i < out.n; ++i) {
        const auto& st = states[i];
        if (!st.is_array() || st.empty())
            die(kExitParse, "states[" + std::to_string(i) +
                                "]: expected a non-empty array of [re, im] pairs");
        if (i == 0) out.dim = static_cast<int>(st.size());
        if (static_cast<int>(st.size()) != out.dim)
            die(kExitParse, "states[" + std::to_string(i) + "]: expected " +
                                std::to_string(out.dim) + " components");
        for (int k = 0; k < out.dim; ++k) {
            const auto& entry = st[k];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                !entry[1].is_number())
                die(kExitParse, "states[" + std::to_string(i) + "][" +
                                    std::to_string(k) + "]: expected an [re, im] pair");
            out.states_reim.push_back(entry[0].get<double>());
            out.states_reim.push_back(entry[1].get<double>());
        }
    }

    if (doc.contains("priors")) {
        const auto& priors = doc["priors"];
        if (!priors.is_array() || static_cast<int>(priors.size()) != out.n)
            die(kExitParse,
                "priors: expected an array of " + std::to_string(out.n) + " numbers");
        for (int i = 0; i < out.n; ++i) {
            if (!priors[i].is_number())
                die(kExitParse, "priors[" + std::to_string(i) + "]: expected a number");
            out.priors.push_back(priors[i].get<double>());
        }
    } else {
        out.priors.assign(out.n, 1.0 / out.n);
    }
    return out;
}

using EnsemblePtr = std::unique_ptr<uqsd_ensemble, decltype(&uqsd_ensemble_destroy)>;
using SolutionPtr = std::unique_ptr<uqsd_solution, decltype(&uqsd_solution_destroy)>;
using CertificatePtr =
    std::unique_ptr<uqsd_certificate, decltype(&uqsd_certificate_destroy)>;
using OraclePtr =
    std::unique_ptr<uqsd_oracle_result, decltype(&uqsd_oracle_result_destroy)>;
using PovmPtr = std::unique_ptr<uqsd_povm, decltype(&uqsd_povm_destroy)>;

EnsemblePtr make_ensemble(const EnsembleDocument& doc) {
    uqsd_ensemble* e = nullptr;
    const uqsd_status st = uqsd_ensemble_create(doc.n, doc.dim, doc.states_reim.data(),
                                                doc.priors.data(), &e);
    if (st != UQSD_OK)
        die(kExitValidation,
            std::string(uqsd_status_name(st)) + ": " + uqsd_last_error());
    return EnsemblePtr(e, uqsd_ensemble_destroy);
}

std::vector<double> solution_x(const uqsd_solution* s) {
    std::vector<double> x(uqsd_solution_size(s));
    uqsd_solution_x(s, x.data(), static_cast<int32_t>(x.size()));
    return x;
}

std::string branch_string(const uqsd_solution* s) {
    std::string b = uqsd_branch_name(uqsd_solution_branch(s));
    const int32_t count = uqsd_solution_reduction_count(s);
    for (int32_t i = 0; i < count; ++i) {
        uqsd_reduction_record rec;
        uqsd_solution_reduction_record(s, i, &rec);
        b += "/R" + std::to_string(rec.dropped_index);
    }
    return b;
}

json solution_to_json(const uqsd_solution* s) {
    json out;
    out["x"] = solution_x(s);
    out["p_max"] = uqsd_solution_p_max(s);
    out["branch"] = uqsd_branch_name(uqsd_solution_branch(s));

    std::vector<double> xr(uqsd_solution_size(s));
    uqsd_solution_x_relaxed(s, xr.data(), static_cast<int32_t>(xr.size()));
    out["x_relaxed"] = xr;
    out["d_min"] = uqsd_solution_d_min(s);

    json trace = json::array();
    for (int32_t i = 0; i < uqsd_solution_reduction_count(s); ++i) {
        uqsd_reduction_record rec;
        uqsd_solution_reduction_record(s, i, &rec);
        json r;
        r["dropped_index"] = rec.dropped_index;
        r["reduced_priors"] = std::vector<double>(rec.reduced_priors,
                                                  rec.reduced_priors + rec.n_kept);
        r["reduced_overlaps"] = std::vector<double>(
            rec.reduced_overlaps, rec.reduced_overlaps + rec.n_overlaps);
        r["scale_factor"] = rec.scale_factor;
        trace.push_back(r);
    }
    out["reduction_trace"] = trace;
    return out;
}

json oracle_to_json(const uqsd_ensemble* e, const uqsd_oracle_result* r) {
    json out;
    std::vector<double> x(uqsd_oracle_result_size(r));
    uqsd_oracle_result_x(r, x.data(), static_cast<int32_t>(x.size()));
    out["x"] = x;
    out["p"] = uqsd_oracle_result_p(r);
    out["grid_spacing"] = uqsd_oracle_result_grid_spacing(r);
    out["refinement_rounds"] = uqsd_oracle_result_refinement_rounds(r);
    double bound = 0;
    if (uqsd_oracle_dual_bound(e, r, &bound) == UQSD_OK) {
        out["dual_bound"] = bound;
        out["dual_gap"] = bound - uqsd_oracle_result_p(r);
    }
    return out;
}

struct SolveFlags {
    bool verify = false;
    bool povm = false;
    bool fallback_oracle = false;
    std::optional<double> oracle_accuracy;
};

int run_solve(const std::string& path, const SolveFlags& flags) {
    const EnsembleDocument doc = parse_ensemble_document(path);
    EnsemblePtr e = make_ensemble(doc);

    json out;
    if (!doc.label.empty()) out["label"] = doc.label;
    out["n"] = doc.n;
    out["dim"] = doc.dim;

    uqsd_solution* raw = nullptr;
    const uqsd_status st = uqsd_solve(e.get(), &raw);
    SolutionPtr sol(raw, uqsd_solution_destroy);

    bool verification_failed = false;
    if (st == UQSD_OK) {
        out["method"] = "analytic";
        out.update(solution_to_json(sol.get()));

        if (flags.verify) {
            uqsd_certificate* craw = nullptr;
            if (uqsd_certificate_build(e.get(), sol.get(), &craw) != UQSD_OK)
                die(kExitValidation, std::string("certificate: ") + uqsd_last_error());
            CertificatePtr cert(craw, uqsd_certificate_destroy);
            uqsd_verification_report rep;
            if (uqsd_verify(e.get(), sol.get(), cert.get(), &rep) != UQSD_OK)
                die(kExitValidation, std::string("verify: ") + uqsd_last_error());
            json v;
            v["d_value"] = uqsd_certificate_d_value(cert.get());
            v["residuals"] = {{"psd", rep.residuals.psd},
                              {"diagonal", rep.residuals.diagonal},
                              {"attainability", rep.residuals.attainability},
                              {"gap", rep.residuals.gap}};
            v["certified"] = rep.certified != 0;
            v["primal_dual_gap"] = rep.primal_dual_gap;
            out["certificate"] = v;
            verification_failed = rep.certified == 0;
        }
        if (flags.povm) {
            uqsd_povm* praw = nullptr;
            if (uqsd_povm_build(e.get(), sol.get(), &praw) != UQSD_OK)
                die(kExitValidation, std::string("povm: ") + uqsd_last_error());
            PovmPtr povm(praw, uqsd_povm_destroy);
            uqsd_povm_residuals res;
            uqsd_povm_residuals_get(povm.get(), &res);
            out["povm"] = {{"completeness", res.completeness},
                           {"no_error", res.no_error},
                           {"positivity", res.positivity}};
        }
        if (flags.oracle_accuracy) {
            uqsd_oracle_result* oraw = nullptr;
            if (uqsd_oracle(e.get(), *flags.oracle_accuracy, &oraw) != UQSD_OK)
                die(kExitValidation, std::string("oracle: ") + uqsd_last_error());
            OraclePtr orc(oraw, uqsd_oracle_result_destroy);
            json cmp = oracle_to_json(e.get(), orc.get());
            cmp["abs_diff"] =
                std::abs(uqsd_oracle_result_p(orc.get()) - uqsd_solution_p_max(sol.get()));
            out["oracle"] = cmp;
        }
    } else if (st == UQSD_ERR_UNSUPPORTED_COMPLEX_CASE && flags.fallback_oracle) {
        const double accuracy = flags.oracle_accuracy.value_or(1e-6);
        uqsd_oracle_result* oraw = nullptr;
        if (uqsd_oracle(e.get(), accuracy, &oraw) != UQSD_OK)
            die(kExitValidation, std::string("oracle: ") + uqsd_last_error());
        OraclePtr orc(oraw, uqsd_oracle_result_destroy);
        out["method"] = "oracle-fallback";
        out["oracle"] = oracle_to_json(e.get(), orc.get());
        out["x"] = out["oracle"]["x"];
        out["p_max"] = out["oracle"]["p"];
        if (flags.verify) verification_failed = true; // nothing to certify
    } else if (st == UQSD_ERR_UNSUPPORTED_COMPLEX_CASE ||
               st == UQSD_ERR_WRONG_ARITY) {
        die(kExitUnsupported,
            std::string(uqsd_status_name(st)) + ": " + uqsd_last_error() +
                " (pass --fallback-oracle to solve numerically)");
    } else {
        die(kExitValidation,
            std::string(uqsd_status_name(st)) + ": " + uqsd_last_error());
    }

    std::cout << out.dump(2) << "\n";
    if (verification_failed) {
        std::cerr << "verification failed: solution is not certified\n";
        return kExitVerification;
    }
    return 0;
}

int run_oracle(const std::string& path, double accuracy) {
    const EnsembleDocument doc = parse_ensemble_document(path);
    EnsemblePtr e = make_ensemble(doc);
    uqsd_oracle_result* oraw = nullptr;
    if (uqsd_oracle(e.get(), accuracy, &oraw) != UQSD_OK)
        die(kExitValidation, std::string("oracle: ") + uqsd_last_error());
    OraclePtr orc(oraw, uqsd_oracle_result_destroy);

    json out;
    if (!doc.label.empty()) out["label"] = doc.label;
    out["n"] = doc.n;
    out["dim"] = doc.dim;
    out["method"] = "oracle";
    out.update(oracle_to_json(e.get(), orc.get()));
    std::cout << out.dump(2) << "\n";
    return 0;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// The example family swept by both figure commands:
//   phi_0 = (1, 0, 0)
//   phi_1 = (cos phi2, sin phi2, 0)
//   phi_2 = (cos phi3 sin theta3, sin phi3 sin theta3, cos theta3).
std::vector<double> family_states(double phi2, double phi3, double theta3) {
    const double st = std::sin(theta3), ct = std::cos(theta3);
    return {
        1, 0, 0, 0, 0, 0, // state 0
        std::cos(phi2), 0, std::sin(phi2), 0, 0, 0, // state 1
        std::cos(phi3) * st, 0, std::sin(phi3) * st, 0, ct, 0, // state 2
    };
}

std::vector<double> parse_priors_flag(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            die(kExitParse, "--priors: cannot parse '" + item + "' as a number");
        }
    }
    return out;
}

int sweep_row(double param, const char* param_name, const std::vector<double>& states,
              const std::vector<double>& priors, std::string& csv) {
    uqsd_ensemble* eraw = nullptr;
    uqsd_status st = uqsd_ensemble_create(3, 3, states.data(), priors.data(), &eraw);
    if (st != UQSD_OK)
        die(kExitValidation, std::string(param_name) + "=" + fmt17(param) + ": " +
                                 uqsd_status_name(st) + ": " + uqsd_last_error());
    EnsemblePtr e(eraw, uqsd_ensemble_destroy);

    uqsd_solution* sraw = nullptr;
    st = uqsd_solve(e.get(), &sraw);
    if (st != UQSD_OK)
        die(kExitValidation, std::string(param_name) + "=" + fmt17(param) + ": " +
                                 uqsd_status_name(st) + ": " + uqsd_last_error());
    SolutionPtr sol(sraw, uqsd_solution_destroy);

    const std::vector<double> x = solution_x(sol.get());
    csv += fmt17(param);
    for (double v : x) csv += "," + fmt17(v);
    csv += "," + fmt17(uqsd_solution_p_max(sol.get()));
    csv += "," + branch_string(sol.get());
    csv += "\n";
    return 0;
}

int run_sweep_theta(double phi2, double phi3, int steps, const std::string& priors_csv) {
    if (steps < 2) die(kExitParse, "--steps must be at least 2");
    std::vector<double> priors = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    if (!priors_csv.empty()) priors = parse_priors_flag(priors_csv);
    if (priors.size() != 3) die(kExitParse, "--priors: expected 3 comma-separated values");

    std::string csv = "theta3,x1,x2,x3,p_max,branch\n";
    for (int k = 0; k < steps; ++k) {
        const double theta3 = (kPi / 2) * (k + 1) / (steps + 1);
        sweep_row(theta3, "theta3", family_states(phi2, phi3, theta3), priors, csv);
    }
    std::cout << csv;
    return 0;
}

int run_sweep_eta(double phi2, double phi3, double theta3, int steps) {
    if (steps < 2) die(kExitParse, "--steps must be at least 2");
    const std::vector<double> states = family_states(phi2, phi3, theta3);
    std::string csv = "eta3,x1,x2,x3,p_max,branch\n";
    for (int k = 0; k < steps; ++k) {
        const double eta3 = static_cast<double>(k + 1) / (steps + 1);
        const double rest = (1.0 - eta3) / 2;
        sweep_row(eta3, "eta3", states, {rest, rest, eta3}, csv);
    }
    std::cout << csv;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal unambiguous discrimination of 2-3 pure quantum states"};
    app.require_subcommand(1);

    std::string input_path;
    SolveFlags solve_flags;
    double oracle_accuracy_flag = 0;

    auto* solve_cmd = app.add_subcommand("solve", "Solve an ensemble file analytically");
    solve_cmd->add_option("input", input_path, "ensemble JSON file")->required();
    solve_cmd->add_flag("--verify", solve_flags.verify,
                        "attach and check the dual optimality certificate");
    solve_cmd->add_flag("--povm", solve_flags.povm,
                        "attach explicit measurement residuals");
    solve_cmd->add_flag("--fallback-oracle", solve_flags.fallback_oracle,
                        "solve unsupported cases with the numeric oracle");
    auto* oracle_opt = solve_cmd->add_option("--oracle", oracle_accuracy_flag,
                                             "attach an oracle comparison at this accuracy");

    auto* oracle_cmd = app.add_subcommand("oracle", "Solve an ensemble file numerically");
    double oracle_accuracy = 1e-6;
    oracle_cmd->add_option("input", input_path, "ensemble JSON file")->required();
    oracle_cmd->add_option("--accuracy", oracle_accuracy, "grid target accuracy")
        ->check(CLI::PositiveNumber);

    double phi2 = kPi / 3, phi3 = kPi / 4, theta3 = kPi / 5;
    int steps = 500;
    std::string priors_csv;

    auto* sweep_theta_cmd = app.add_subcommand(
        "sweep-theta", "Sweep the third state's polar angle; CSV on stdout");
    sweep_theta_cmd->add_option("--phi2", phi2, "azimuth of state 1 (radians)");
    sweep_theta_cmd->add_option("--phi3", phi3, "azimuth of state 2 (radians)");
    sweep_theta_cmd->add_option("--steps", steps, "number of sweep points");
    sweep_theta_cmd->add_option("--priors", priors_csv, "comma-separated priors");

    auto* sweep_eta_cmd = app.add_subcommand(
        "sweep-eta", "Sweep the third prior with the first two equal; CSV on stdout");
    sweep_eta_cmd->add_option("--phi2", phi2, "azimuth of state 1 (radians)");
    sweep_eta_cmd->add_option("--phi3", phi3, "azimuth of state 2 (radians)");
    sweep_eta_cmd->add_option("--theta3", theta3, "polar angle of state 2 (radians)");
    sweep_eta_cmd->add_option("--steps", steps, "number of sweep points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitParse;
    }

    try {
        if (solve_cmd->parsed()) {
            if (oracle_opt->count() > 0) {
                if (oracle_accuracy_flag <= 0)
                    die(kExitParse, "--oracle: accuracy must be positive");
                solve_flags.oracle_accuracy = oracle_accuracy_flag;
            }
            return run_solve(input_path, solve_flags);
        }
        if (oracle_cmd->parsed()) return run_oracle(input_path, oracle_accuracy);
        if (sweep_theta_cmd->parsed())
            return run_sweep_theta(phi2, phi3, steps, priors_csv);
        if (sweep_eta_cmd->parsed()) return run_sweep_eta(phi2, phi3, theta3, steps);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.exit_code;
    }
    return 0;
}
