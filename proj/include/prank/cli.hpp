#pragma once

// Command-line front end. `dispatch` is the whole program; tools/cmtool.cpp
// only forwards argv. Exit codes: 0 success, 1 a verification did not hold,
// 2 usage or input error.

#include <prank/cartier.hpp>
#include <prank/covers.hpp>
#include <prank/curves.hpp>
#include <prank/point_count.hpp>
#include <prank/report.hpp>
#include <prank/search.hpp>
#include <prank/strata.hpp>
#include <prank/verify.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

namespace prank::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Thrown for bad flag values that CLI11 cannot catch on its own.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// --threads if given, else PRANK_THREADS, else the hardware concurrency.
inline unsigned resolve_threads(std::optional<unsigned> flag) {
    if (flag) {
        if (*flag < 1) throw UsageError("--threads must be >= 1");
        return *flag;
    }
    if (const char* env = std::getenv("PRANK_THREADS"); env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 1 || v > 4096) throw UsageError(std::string("PRANK_THREADS must be a positive integer, got '") + env + "'");
        return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

inline ff::Field make_field(ff::u32 p, int ext) { return ff::Field(p, ext); }

namespace detail {

inline void print_table(std::ostream& out, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> w(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) w[i] = header[i].size();
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out << "  ";
            if (i + 1 < r.size()) out << std::left << std::setw(static_cast<int>(w[i]));
            out << r[i];
        }
        out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
}

inline void check_format(const std::string& f, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (f == a) return;
    throw UsageError("unsupported --format '" + f + "'");
}

}  // namespace detail

inline int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Cartier-Manin p-rank toolkit for hyperelliptic curves and their double covers", "cmtool"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "cmtool 1.0.0");

    std::optional<unsigned> threads_flag;
    std::string format = "json";
    std::function<int()> action;

    auto add_threads = [&](CLI::App* sc) { sc->add_option("--threads", threads_flag, "worker threads (default: PRANK_THREADS or all cores)"); };

    // prank
    ff::u32 p = 0;
    int ext = 1;
    std::string poly_text, strategy_text = "auto";
    bool with_oracle = false;
    auto* sc_prank = app.add_subcommand("prank", "Cartier-Manin matrix and p-rank of y^2 = f(x)");
    sc_prank->add_option("--p", p, "characteristic")->required();
    sc_prank->add_option("--ext", ext, "extension degree of the coefficient field (1 or 2)")->check(CLI::IsMember({1, 2}));
    sc_prank->add_option("--poly", poly_text, "coefficients c0,c1,... (constant term first; w is the GF(p^2) generator)")->required();
    sc_prank->add_option("--strategy", strategy_text, "coefficient path: auto, naive, recurrence")->check(CLI::IsMember({"auto", "naive", "recurrence"}));
    sc_prank->add_flag("--oracle", with_oracle, "also count points (genus <= 3, p <= 31, GF(p) only)");
    sc_prank->callback([&] {
        action = [&] {
            const ff::Field F = make_field(p, ext);
            const cartier::HyperellipticModel C(poly::DensePoly::parse(F, poly_text));
            const auto strategy = strategy_text == "naive" ? cartier::PowerStrategy::naive
                                  : strategy_text == "recurrence" ? cartier::PowerStrategy::recurrence
                                                                  : cartier::PowerStrategy::automatic;
            const auto cm = cartier::cartier_matrix(C, strategy);
            report::Json j;
            j["field"] = report::field_json(F);
            j["poly"] = C.f().to_string();
            j["genus"] = C.genus();
            j["strategy"] = std::string(cartier::to_string(cm.strategy));
            j["matrix"] = report::matrix_json(cm.matrix);
            j["rank"] = cm.matrix.rank();
            j["p_rank"] = cm.p_rank;
            j["superspecial"] = cm.matrix.is_zero();
            if (with_oracle) j["p_rank_oracle"] = cartier::prank_oracle(C);
            out << report::dump(j);
            return kExitOk;
        };
    });

    // fiber
    std::string f1_text, f2_text;
    auto* sc_fiber = app.add_subcommand("fiber", "genus and p-rank of the normalized fiber product of y^2 = f1 and z^2 = f2");
    sc_fiber->add_option("--p", p, "characteristic")->required();
    sc_fiber->add_option("--ext", ext, "extension degree (1 or 2)")->check(CLI::IsMember({1, 2}));
    sc_fiber->add_option("--f1", f1_text, "coefficients of f1")->required();
    sc_fiber->add_option("--f2", f2_text, "coefficients of f2")->required();
    sc_fiber->callback([&] {
        action = [&] {
            const ff::Field F = make_field(p, ext);
            auto t = covers::kani_rosen_triple(poly::DensePoly::parse(F, f1_text), poly::DensePoly::parse(F, f2_text));
            covers::attach_p_ranks(t);
            report::Json j;
            j["field"] = report::field_json(F);
            j.update(report::to_json(t));
            out << report::dump(j);
            return kExitOk;
        };
    });

    // ss-lambdas
    auto* sc_lam = app.add_subcommand("ss-lambdas", "supersingular Legendre parameters in GF(p^2)");
    sc_lam->add_option("--p", p, "characteristic")->required();
    sc_lam->callback([&] {
        action = [&] {
            const auto lams = curves::supersingular_lambdas(p);
            report::Json j;
            j["p"] = p;
            j["modulus"] = ff::Field::quadratic(p).modulus_string();
            j["count"] = lams.size();
            report::Json arr = report::Json::array();
            for (const auto& l : lams) arr.push_back(l.to_string());
            j["lambdas"] = arr;
            out << report::dump(j);
            return kExitOk;
        };
    });

    // ss5
    std::string mode_text = "first", form_text = "homogeneous", results_dir = "results";
    ff::u32 chunk = 8;
    bool extension = false, save = false, no_story = false;
    auto* sc_ss5 = app.add_subcommand("ss5", "genus-5 superspecial (u, v) sweep for one prime p = 11 mod 12");
    sc_ss5->add_option("--p", p, "prime, p = 11 mod 12")->required();
    sc_ss5->add_option("--mode", mode_text, "first or all")->check(CLI::IsMember({"first", "all"}));
    sc_ss5->add_option("--chunk", chunk, "u-rows per work unit")->check(CLI::PositiveNumber);
    sc_ss5->add_option("--dv-form", form_text, "quartic factor of D_v: homogeneous or as-printed")->check(CLI::IsMember({"homogeneous", "as-printed"}));
    sc_ss5->add_flag("--extension", extension, "search (u, v) over GF(p^2) (slow generic path)");
    sc_ss5->add_flag("--no-story", no_story, "skip the genus-5 p-rank check of each solution");
    sc_ss5->add_flag("--save", save, "also write the record to <results-dir>/ss5/p=<P>.json");
    sc_ss5->add_option("--results-dir", results_dir, "results cache root");
    sc_ss5->add_option("--format", format, "json or csv");
    add_threads(sc_ss5);
    sc_ss5->callback([&] {
        action = [&] {
            detail::check_format(format, {"json", "csv"});
            search::SweepConfig cfg;
            cfg.p = p;
            cfg.mode = search::parse_mode(mode_text);
            cfg.form = search::parse_dv_form(form_text);
            cfg.threads = resolve_threads(threads_flag);
            cfg.chunk = chunk;
            cfg.extension = extension;
            cfg.check_story = !no_story;
            const auto r = search::ss5_sweep(cfg);
            const std::string text = report::dump(report::to_json(r));
            if (save && !extension) report::write_atomic(report::ss5_record_path(results_dir, p), text);
            if (format == "csv")
                out << report::kSs5CsvHeader << '\n' << report::csv_row(r) << '\n';
            else
                out << text;
            return kExitOk;
        };
    });

    // ss5-range
    ff::u32 from = 11, to = 100;
    bool force = false;
    auto* sc_range = app.add_subcommand("ss5-range", "sweep every prime p = 11 mod 12 in [from, to], CSV summary");
    sc_range->add_option("--from", from, "lower bound (inclusive)")->required();
    sc_range->add_option("--to", to, "upper bound (inclusive)")->required();
    sc_range->add_option("--mode", mode_text, "first or all")->check(CLI::IsMember({"first", "all"}));
    sc_range->add_option("--dv-form", form_text, "homogeneous or as-printed")->check(CLI::IsMember({"homogeneous", "as-printed"}));
    sc_range->add_option("--results-dir", results_dir, "results cache root");
    sc_range->add_flag("--force", force, "recompute primes that already have a record");
    add_threads(sc_range);
    sc_range->callback([&] {
        action = [&] {
            if (from > to) throw UsageError("--from must not exceed --to");
            const unsigned nt = resolve_threads(threads_flag);
            const auto mode = search::parse_mode(mode_text);
            const auto form = search::parse_dv_form(form_text);
            out << report::kSs5CsvHeader << '\n';
            for (ff::u32 q = from; q <= to && q >= from; ++q) {
                if (q % 12 != 11 || !ff::is_prime(q)) continue;
                const auto path = report::ss5_record_path(results_dir, q);
                std::optional<search::SearchResult> cached;
                if (!force)
                    if (auto j = report::read_json_file(path)) {
                        try {
                            auto r = report::search_result_from_json(*j);
                            if (r.mode == mode && r.form == form && !r.extension) cached = r;
                        } catch (const std::exception&) {
                        }
                    }
                if (!cached) {
                    search::SweepConfig cfg;
                    cfg.p = q;
                    cfg.mode = mode;
                    cfg.form = form;
                    cfg.threads = nt;
                    cached = search::ss5_sweep(cfg);
                    report::write_atomic(path, report::dump(report::to_json(*cached)));
                }
                out << report::csv_row(*cached) << '\n' << std::flush;
            }
            return kExitOk;
        };
    });

    // enumerate-ss-g2
    ff::u64 q_order = 0;
    std::vector<int> degrees{5, 6};
    auto* sc_enum = app.add_subcommand("enumerate-ss-g2", "exhaustive search for superspecial genus-2 models y^2 = f over GF(q)");
    sc_enum->add_option("--p", p, "characteristic")->required();
    sc_enum->add_option("--q", q_order, "field size, p or p^2 (default p)");
    sc_enum->add_option("--degree", degrees, "degrees to scan (5, 6)")->check(CLI::IsMember({5, 6}));
    sc_enum->callback([&] {
        action = [&] {
            const ff::u64 q = q_order ? q_order : p;
            const auto res = search::superspecial_g2_enumeration(p, q, degrees);
            report::Json j;
            j["p"] = p;
            j["q"] = q;
            j["degrees"] = degrees;
            j["candidates"] = res.candidates;
            j["squarefree"] = res.squarefree;
            j["count"] = res.models.size();
            report::Json models = report::Json::array();
            for (const auto& f : res.models) models.push_back(f.to_string());
            j["models"] = models;
            out << report::dump(j);
            return kExitOk;
        };
    });

    // strata
    int g = 2, f = 0, f_E = 0;
    std::string space_text = "B_Eg";
    std::optional<int> f_E_opt;
    auto* sc_strata = app.add_subcommand("strata", "dimension formulas and boundary combinatorics");
    sc_strata->require_subcommand(1);
    auto* st_dim = sc_strata->add_subcommand("dim", "dimension of V_f of a space");
    st_dim->add_option("--g", g, "genus")->required();
    st_dim->add_option("--f", f, "p-rank bound f")->required();
    st_dim->add_option("--fE", f_E, "p-rank of E (0 or 1)");
    st_dim->add_option("--space", space_text, "B_Eg, B_g or H_g");
    st_dim->add_option("--format", format, "json or table");
    auto* st_bd = sc_strata->add_subcommand("boundary", "boundary components of the compactified space of double covers of E");
    st_bd->add_option("--g", g, "genus")->required();
    st_bd->add_option("--fE", f_E_opt, "include V_f dimensions for this p-rank of E");
    st_bd->add_option("--format", format, "json or table");
    auto* st_ex = sc_strata->add_subcommand("exists", "is there a smooth double cover of E with genus g and p-rank f");
    st_ex->add_option("--p", p, "characteristic")->required();
    st_ex->add_option("--g", g, "genus")->required();
    st_ex->add_option("--f", f, "p-rank")->required();
    st_ex->add_option("--fE", f_E, "p-rank of E (0 or 1)");
    st_ex->add_option("--format", format, "json or table");
    auto* st_np = sc_strata->add_subcommand("newton", "Newton polygons of p-rank 0 double covers of E (g = 3, 4, 5)");
    st_np->add_option("--format", format, "json or table");

    st_dim->callback([&] {
        action = [&] {
            detail::check_format(format, {"json", "table"});
            const strata::StratumQuery q{g, f, f_E, strata::parse_space(space_text)};
            const int d = strata::stratum_dim(q);
            if (format == "table") {
                detail::print_table(out, {"space", "g", "f", "fE", "dim"},
                                    {{std::string(strata::to_string(q.space)), std::to_string(g), std::to_string(f), std::to_string(f_E), std::to_string(d)}});
            } else {
                out << report::dump({{"space", std::string(strata::to_string(q.space))}, {"g", g}, {"f", f}, {"f_E", f_E}, {"dim", d}});
            }
            return kExitOk;
        };
    });
    st_bd->callback([&] {
        action = [&] {
            detail::check_format(format, {"json", "table"});
            const auto comps = strata::boundary_components(g);
            if (format == "json") {
                report::Json arr = report::Json::array();
                for (const auto& c : comps) arr.push_back(report::to_json(c, f_E_opt));
                out << report::dump({{"g", g}, {"components", arr}});
                return kExitOk;
            }
            std::vector<std::vector<std::string>> rows;
            auto add = [&](const strata::BoundaryComponent& c, const std::string& indent) {
                std::string inside;
                for (const auto& s : c.contained_in) inside += (inside.empty() ? "" : ",") + s;
                std::string vf;
                if (f_E_opt && c.parts.empty()) {
                    const auto w = c.vf_window(*f_E_opt);
                    for (int k = w.lo; k <= w.hi; ++k) vf += (vf.empty() ? "" : " ") + std::to_string(k) + ":" + std::to_string(c.vf_dim(k, *f_E_opt));
                }
                rows.push_back({indent + c.label(), std::to_string(c.dim), inside.empty() ? "-" : inside, vf.empty() ? "-" : vf});
            };
            for (const auto& c : comps) {
                add(c, "");
                for (const auto& part : c.parts) add(part, "  ");
            }
            detail::print_table(out, {"component", "dim", "contained_in", "f:dim V_f"}, rows);
            return kExitOk;
        };
    });
    st_ex->callback([&] {
        action = [&] {
            detail::check_format(format, {"json", "table"});
            const bool e = strata::smooth_cover_exists(p, g, f, f_E);
            if (format == "table")
                detail::print_table(out, {"p", "g", "f", "fE", "exists"},
                                    {{std::to_string(p), std::to_string(g), std::to_string(f), std::to_string(f_E), e ? "yes" : "no"}});
            else
                out << report::dump({{"p", p}, {"g", g}, {"f", f}, {"f_E", f_E}, {"exists", e}});
            return kExitOk;
        };
    });
    st_np->callback([&] {
        action = [&] {
            detail::check_format(format, {"json", "table"});
            const auto& tables = strata::newton_polygon_tables();
            if (format == "json") {
                report::Json arr = report::Json::array();
                for (const auto& t : tables) arr.push_back({{"g", t.g}, {"polygons", t.polygons}});
                out << report::dump({{"tables", arr}});
            } else {
                std::vector<std::vector<std::string>> rows;
                for (const auto& t : tables)
                    for (const auto& np : t.polygons) rows.push_back({std::to_string(t.g), np});
                detail::print_table(out, {"g", "slopes"}, rows);
            }
            return kExitOk;
        };
    });

    // verify
    std::string suite_name;
    ff::u64 seed = verify::kDefaultSeed;
    auto* sc_verify = app.add_subcommand("verify", "re-run a self-check suite");
    std::vector<std::string> names{"all"};
    for (const auto& s : verify::suites()) names.emplace_back(s.name);
    sc_verify->add_option("suite", suite_name, "suite name or 'all' (all skips ss5-extended)")->required()->check(CLI::IsMember(names));
    sc_verify->add_option("--seed", seed, "seed for randomized suites");
    add_threads(sc_verify);
    sc_verify->callback([&] {
        action = [&] {
            verify::Options opt;
            opt.seed = seed;
            opt.threads = resolve_threads(threads_flag);
            report::Json arr = report::Json::array();
            bool ok = true;
            for (const auto& s : verify::suites()) {
                if (suite_name == "all" ? std::string(s.name) == "ss5-extended" : suite_name != s.name) continue;
                const auto r = s.run(opt);
                ok = ok && r.passed;
                arr.push_back(report::to_json(r));
            }
            out << report::dump(suite_name == "all" ? report::Json{{"passed", ok}, {"reports", arr}} : arr.at(0));
            return ok ? kExitOk : kExitVerifyFailed;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        app.exit(e, out, err);
        return kExitUsage;
    }
    try {
        return action ? action() : kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitVerifyFailed;
    }
}

inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("cmtool");
    for (const auto& a : args) argv.push_back(a.c_str());
    return dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace prank::cli
