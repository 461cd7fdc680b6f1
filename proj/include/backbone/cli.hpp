#pragma once

// Command-line front end: argument parsing, dispatch, and machine-readable
// output for every suite in the toolkit.
//
// Exit codes: 0 success, 2 invalid configuration, 3 verification suite
// reported an identity outside tolerance, 4 numerical non-convergence.
//
// Every output carries a provenance header (version, seed, config hash);
// outputs are byte-identical across reruns of the same invocation, worker
// count included.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "backbone/errors.hpp"
#include "backbone/exponent.hpp"
#include "backbone/lcft_constants.hpp"
#include "backbone/mc_estimator.hpp"
#include "backbone/moment.hpp"
#include "backbone/numtheory.hpp"
#include "backbone/verify.hpp"
#include "backbone/version.hpp"

namespace backbone::cli {

using nlohmann::json;

namespace detail {

// Hash of the scientific configuration only: worker count and output path
// must not perturb it, or replay runs would no longer be byte-identical.
inline std::uint64_t config_hash(const std::string& canonical) {
    std::uint64_t h = 0x436f6e6669673141ULL;
    for (unsigned char ch : canonical) h = lattice::mix64(h ^ ch);
    return h;
}

inline std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline json provenance(std::uint64_t hash, std::optional<std::uint64_t> seed) {
    json p{{"version", kVersion}, {"config_hash", hash_hex(hash)}};
    if (seed) p["seed"] = *seed;
    return p;
}

inline void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(output_path, std::ios::binary);
        if (!out) throw DomainError("cannot open output path: " + output_path);
        out << text;
        if (text.empty() || text.back() != '\n') out << '\n';
    }
}

inline std::vector<std::int64_t> parse_radii(const std::string& csv) {
    std::vector<std::int64_t> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoll(tok));
    }
    if (out.empty()) throw DomainError("--radii: empty list");
    return out;
}

inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace detail

// Parse arguments (argv[0] excluded) and run; returns the process exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& err = std::cerr) {
    CLI::App app{"backbone: percolation backbone exponent toolkit"};
    app.set_config("--config", "", "flat key=value configuration file");
    app.require_subcommand(1);

    double kappa = 0.0, q_weight = 0.0, lambda = 0.0, gamma = 0.0, alpha = 0.0, theta = 0.0;
    double tol = 0.0, prob = 0.5;
    std::string radii_csv = "8,16,32,64,128,256";
    std::string suite, event_name = "bb", output_path, format = "json", input_path, scan_x;
    std::uint64_t samples = 200'000, seed = 1;
    int workers = 8;
    std::int64_t rin = 0, ratio = 4;
    bool xi_via_moment = false;
    std::int64_t nt_totient = 0, nt_cyclotomic = 0, nt_minpoly = 0;
    std::string nt_classify;
    int scan_degree = 4, scan_height = 30;

    auto* c_exact = app.add_subcommand("exact", "solve the backbone exponent equation");
    c_exact->add_option("--kappa", kappa, "SLE parameter in (4,8)");
    c_exact->add_option("--q", q_weight, "FK cluster weight in (0,4]");
    c_exact->add_option("--output", output_path);

    auto* c_table = app.add_subcommand("table", "the (q, kappa, xi) table");
    c_table->add_option("--format", format, "json or csv");
    c_table->add_option("--output", output_path);

    auto* c_moment = app.add_subcommand("moment", "evaluate the bubble moment function");
    c_moment->add_option("--kappa", kappa);
    c_moment->add_option("--lambda", lambda);
    c_moment->add_option("--gamma", gamma);
    c_moment->add_option("--alpha", alpha);
    c_moment->add_flag("--xi-from-moment", xi_via_moment, "solve F(-x) = 1 instead");
    c_moment->add_option("--output", output_path);

    auto* c_verify = app.add_subcommand("verify", "run a verification suite");
    c_verify->add_option("--suite", suite, "integrals | constants | identities | numtheory")
        ->required();
    c_verify->add_option("--tol", tol, "tolerance override for every row");
    c_verify->add_option("--output", output_path);

    auto* c_sim = app.add_subcommand("simulate", "Monte Carlo arm-event trials");
    c_sim->add_option("--event", event_name, "onearm | bb | bb-annulus | bww");
    c_sim->add_option("--radii", radii_csv, "comma-separated outer radii");
    c_sim->add_option("--rin", rin, "inner radius for bww annuli (0: arms from the origin neighbors)");
    c_sim->add_option("--ratio", ratio, "outer/inner ratio for bb-annulus");
    c_sim->add_option("--samples", samples);
    c_sim->add_option("--seed", seed);
    c_sim->add_option("--workers", workers);
    c_sim->add_option("--p", prob, "site probability");
    c_sim->add_option("--format", format, "csv or json");
    c_sim->add_option("--output", output_path);

    auto* c_est = app.add_subcommand("estimate", "fit slopes from a simulate CSV");
    c_est->add_option("--input", input_path)->required();
    c_est->add_option("--output", output_path);

    auto* c_nt = app.add_subcommand("numtheory", "exact integer helpers");
    c_nt->add_option("--totient", nt_totient);
    c_nt->add_option("--cyclotomic", nt_cyclotomic);
    c_nt->add_option("--min-poly", nt_minpoly);
    c_nt->add_option("--classify", nt_classify, "k,n with gcd(k,n)=1");
    c_nt->add_option("--scan", scan_x, "numeric value for the polynomial scan");
    c_nt->add_option("--max-degree", scan_degree);
    c_nt->add_option("--max-height", scan_height);
    c_nt->add_option("--output", output_path);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help() << std::endl;
            return 0;
        }
        err << "configuration error: " << e.what() << std::endl;
        return 2;
    }

    if (const char* envw = std::getenv("BACKBONE_THREADS")) {
        workers = std::max(1, std::atoi(envw));
    }
    std::uint64_t hash = 0;
    auto canon = [&](std::initializer_list<std::string> parts) {
        std::string s;
        for (const auto& p : parts) {
            s += p;
            s += '|';
        }
        hash = detail::config_hash(s);
    };

    try {
        if (c_exact->parsed()) {
            if (q_weight > 0.0) kappa = exponent::kappa_from_q(q_weight);
            if (!(kappa > 0.0)) throw DomainError("exact: provide --kappa or --q");
            canon({"exact", detail::num(kappa), detail::num(q_weight)});
            auto sol = exponent::solve_xi(kappa);
            json out{{"provenance", detail::provenance(hash, std::nullopt)},
                     {"kappa", sol.kappa},
                     {"xi", sol.xi},
                     {"rho", sol.rho},
                     {"residual", sol.residual},
                     {"bracket", {sol.bracket.first, sol.bracket.second}},
                     {"degenerate", sol.degenerate}};
            if (q_weight > 0.0) out["q"] = q_weight;
            detail::emit(out.dump(2), output_path);
            return 0;
        }

        if (c_table->parsed()) {
            canon({"table", format});
            auto rows = exponent::exponent_table();
            if (format == "csv") {
                std::ostringstream os;
                os << "# version=" << kVersion << "\n# config_hash=" << detail::hash_hex(hash)
                   << "\nq,kappa,xi\n";
                for (const auto& r : rows) {
                    os << detail::num(r.q) << ',' << detail::num(r.kappa) << ','
                       << detail::num(r.xi) << '\n';
                }
                detail::emit(os.str(), output_path);
            } else {
                json jr = json::array();
                for (const auto& r : rows) {
                    jr.push_back({{"q", r.q}, {"kappa", r.kappa}, {"xi", r.xi}});
                }
                json out{{"provenance", detail::provenance(hash, std::nullopt)}, {"table", jr}};
                detail::emit(out.dump(2), output_path);
            }
            return 0;
        }

        if (c_moment->parsed()) {
            canon({"moment", detail::num(kappa), detail::num(lambda), detail::num(gamma),
                   detail::num(alpha), xi_via_moment ? "solve" : "eval"});
            json out{{"provenance", detail::provenance(hash, std::nullopt)}};
            if (gamma > 0.0) {
                auto p = exponent::KappaParams::from_gamma(gamma);
                out["gamma"] = gamma;
                out["alpha"] = alpha;
                out["value"] = moment::moment_f_gamma(p, alpha);
            } else {
                if (!(kappa > 0.0)) throw DomainError("moment: provide --kappa or --gamma");
                auto p = exponent::KappaParams::from_kappa(kappa);
                out["kappa"] = kappa;
                if (xi_via_moment) {
                    auto r = moment::xi_from_moment(p);
                    out["xi"] = r.xi;
                    out["degenerate"] = r.degenerate;
                } else {
                    out["lambda"] = lambda;
                    out["value"] = moment::moment_f(p, lambda);
                }
            }
            detail::emit(out.dump(2), output_path);
            return 0;
        }

        if (c_verify->parsed()) {
            canon({"verify", suite, detail::num(tol)});
            auto rows = verify::suite_by_name(suite, tol);
            std::ostringstream os;
            os << "# version=" << kVersion << " suite=" << suite
               << " config_hash=" << detail::hash_hex(hash) << "\n";
            int failures = 0;
            for (const auto& r : rows) {
                os << r.name << " | " << r.params << " | lhs=" << detail::num(r.lhs)
                   << " rhs=" << detail::num(r.rhs) << " err=" << detail::num(r.error)
                   << " tol=" << detail::num(r.tol) << " | " << (r.pass ? "pass" : "FAIL") << "\n";
                if (!r.pass) ++failures;
            }
            os << "suite=" << suite << " rows=" << rows.size() << " failures=" << failures << "\n";
            detail::emit(os.str(), output_path);
            return failures == 0 ? 0 : 3;
        }

        if (c_sim->parsed()) {
            mc::ArmEvent event;
            std::vector<mc::RadiusSpec> radii;
            auto outer = detail::parse_radii(radii_csv);
            if (event_name == "onearm") {
                event = mc::ArmEvent::OneArm;
                for (auto n : outer) radii.push_back({0, n});
            } else if (event_name == "bb") {
                event = mc::ArmEvent::Backbone;
                for (auto n : outer) radii.push_back({0, n});
            } else if (event_name == "bb-annulus") {
                event = mc::ArmEvent::AnnulusBB;
                for (auto n : outer) radii.push_back({n, ratio * n});
            } else if (event_name == "bww") {
                event = mc::ArmEvent::BWW;
                for (auto n : outer) radii.push_back({rin, n});
            } else {
                throw DomainError("simulate: unknown event " + event_name);
            }
            canon({"simulate", event_name, radii_csv, std::to_string(rin), std::to_string(ratio),
                   std::to_string(samples), std::to_string(seed), detail::num(prob), format});
            auto batches = mc::run_trials(event, radii, samples, seed, {prob, workers});

            if (format == "json") {
                json jb = json::array();
                for (const auto& b : batches) {
                    auto ci = mc::wilson_interval(b.successes, b.samples);
                    jb.push_back({{"event", mc::event_name(b.event)},
                                  {"r_in", b.r_in},
                                  {"r_out", b.r_out},
                                  {"samples", b.samples},
                                  {"successes", b.successes},
                                  {"p_hat", b.p_hat()},
                                  {"lo", ci.first},
                                  {"hi", ci.second}});
                }
                json out{{"provenance", detail::provenance(hash, seed)}, {"batches", jb}};
                detail::emit(out.dump(2), output_path);
            } else {
                std::ostringstream os;
                os << "# version=" << kVersion << "\n# seed=" << seed
                   << "\n# config_hash=" << detail::hash_hex(hash) << "\n";
                os << "event,r_in,r_out,samples,successes,p_hat,lo,hi\n";
                for (const auto& b : batches) {
                    auto ci = mc::wilson_interval(b.successes, b.samples);
                    os << mc::event_name(b.event) << ',' << b.r_in << ',' << b.r_out << ','
                       << b.samples << ',' << b.successes << ',' << detail::num(b.p_hat()) << ','
                       << detail::num(ci.first) << ',' << detail::num(ci.second) << '\n';
                }
                detail::emit(os.str(), output_path);
            }
            return 0;
        }

        if (c_est->parsed()) {
            canon({"estimate", input_path});
            std::ifstream in(input_path);
            if (!in) throw DomainError("estimate: cannot open " + input_path);
            std::string line;
            std::vector<mc::ArmTrialBatch> batches;
            while (std::getline(in, line)) {
                if (line.empty() || line[0] == '#' || line.rfind("event,", 0) == 0) continue;
                std::stringstream ss(line);
                std::string tok;
                std::vector<std::string> cells;
                while (std::getline(ss, tok, ',')) cells.push_back(tok);
                if (cells.size() < 5) throw DomainError("estimate: malformed row: " + line);
                mc::ArmTrialBatch b;
                b.r_in = std::stoll(cells[1]);
                b.r_out = std::stoll(cells[2]);
                b.samples = std::stoull(cells[3]);
                b.successes = std::stoull(cells[4]);
                batches.push_back(b);
            }
            if (batches.size() < 3) throw DomainError("estimate: need at least 3 rows");
            auto fit = mc::fit_power_law(batches);
            json out{{"provenance", detail::provenance(hash, std::nullopt)},
                     {"points_used", fit.points_used},
                     {"slope", fit.slope},
                     {"slope_stderr", fit.slope_stderr},
                     {"intercept", fit.intercept},
                     {"exponent_estimate", -fit.slope}};
            detail::emit(out.dump(2), output_path);
            return 0;
        }

        if (c_nt->parsed()) {
            canon({"numtheory", std::to_string(nt_totient), std::to_string(nt_cyclotomic),
                   std::to_string(nt_minpoly), nt_classify, scan_x,
                   std::to_string(scan_degree), std::to_string(scan_height)});
            json out{{"provenance", detail::provenance(hash, std::nullopt)}};
            if (nt_totient > 0) out["totient"] = numtheory::totient(nt_totient);
            if (nt_cyclotomic > 0) {
                out["cyclotomic"] = numtheory::cyclotomic(static_cast<int>(nt_cyclotomic)).to_string();
            }
            if (nt_minpoly > 0) {
                out["min_poly_two_cos"] =
                    numtheory::min_poly_two_cos(static_cast<int>(nt_minpoly)).to_string();
            }
            if (!nt_classify.empty()) {
                auto comma = nt_classify.find(',');
                if (comma == std::string::npos) throw DomainError("--classify expects k,n");
                auto cls = numtheory::classify_two_cos(std::stoll(nt_classify.substr(0, comma)),
                                                       std::stoll(nt_classify.substr(comma + 1)));
                out["classify"] = cls.is_integer
                                      ? json{{"kind", "integer"}, {"value", cls.integer_value}}
                                      : json{{"kind", "irrational-algebraic"}, {"degree", cls.degree}};
            }
            if (!scan_x.empty()) {
                auto r = numtheory::small_poly_scan(std::stod(scan_x), scan_degree, scan_height);
                out["scan"] = r ? json{{"found", true}, {"polynomial", r->to_string()}}
                                : json{{"found", false}};
            }
            detail::emit(out.dump(2), output_path);
            return 0;
        }
    } catch (const DomainError& e) {
        err << "configuration error: " << e.what() << std::endl;
        return 2;
    } catch (const PoleError& e) {
        err << "configuration error: " << e.what() << std::endl;
        return 2;
    } catch (const CapacityError& e) {
        err << "configuration error: " << e.what() << std::endl;
        return 2;
    } catch (const NonConvergenceError& e) {
        err << "numerical non-convergence: " << e.what() << std::endl;
        return 4;
    } catch (const Error& e) {
        err << "error: " << e.what() << std::endl;
        return 4;
    }
    return 2;
}

} // namespace backbone::cli
