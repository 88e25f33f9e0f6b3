#pragma once

/// Command-line driver.  Lives in the library so the dispatcher is testable;
/// the binary in tools/ just forwards argv.  Exit codes: 0 success, 1 a
/// checked predicate is false under --strict, 2 input or usage error.

#include "qreflex/classify2d.hpp"
#include "qreflex/cones.hpp"
#include "qreflex/dedup.hpp"
#include "qreflex/io.hpp"
#include "qreflex/nef_partition.hpp"
#include "qreflex/reflexivity.hpp"
#include "qreflex/toric.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace qreflex::cli {

using nlohmann::json;

struct Options {
    bool strict = false;
    bool use_json = false;
    bool timing = false;
    std::optional<uint64_t> seed;
    std::string out_dir = ".";
};

struct RunReport {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;  // path, content hash
    std::optional<uint64_t> seed;
    json results = json::object();
    std::vector<std::string> text;
    std::optional<double> timing_ms;

    void render(std::ostream& os, bool as_json) const {
        if (as_json) {
            json j;
            j["command"] = command;
            j["inputs"] = json::array();
            for (const auto& [p, h] : inputs) j["inputs"].push_back({{"path", p}, {"hash", h}});
            if (seed) j["seed"] = *seed;
            j["results"] = results;
            if (timing_ms) j["timing_ms"] = *timing_ms;
            os << j.dump(2) << "\n";
        } else {
            os << "command: " << command << "\n";
            for (const auto& [p, h] : inputs) os << "input: " << p << " (hash " << h << ")\n";
            if (seed) os << "seed: " << *seed << "\n";
            for (const auto& line : text) os << line << "\n";
            if (timing_ms) os << "timing_ms: " << *timing_ms << "\n";
        }
    }
};

namespace detail {

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Polytope load_polytope(const std::string& path, RunReport& rep) {
    std::string data = slurp(path);
    rep.inputs.push_back({path, content_hash(data)});
    return parse_polytope(data);
}

inline GradedCone load_cone(const std::string& path, RunReport& rep) {
    std::string data = slurp(path);
    rep.inputs.push_back({path, content_hash(data)});
    return parse_cone(data);
}

inline std::string vec_str(const VecQ& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].to_string();
    return s + ")";
}

inline std::string vec_str(const VecZ& v) { return vec_str(to_vecq(v)); }

inline json polytope_json(const Polytope& P) {
    json j;
    j["rank"] = P.rank();
    j["tag"] = std::string(1, tag_letter(P.tag()));
    j["vertices"] = json::array();
    for (const auto& v : P.vertices()) {
        json row = json::array();
        for (const auto& c : v) row.push_back(c.to_string());
        j["vertices"].push_back(row);
    }
    return j;
}

inline void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << data;
}

}  // namespace detail

/// Runs one command line (without the program name).  The report is rendered
/// to `out`; errors go to `err`.
inline int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact duality toolkit for rational polytopes, Minkowski partitions, and Gorenstein cones"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_flag("--strict", opt.strict, "exit 1 when the checked predicate is false");
    app.add_flag("--json", opt.use_json, "structured JSON report");
    app.add_flag("--timing", opt.timing, "include wall-clock timing in the report (breaks byte-reproducibility)");

    std::string file_arg;
    std::vector<std::string> parts_args, files_args;
    uint64_t seed_val = 0;
    bool seed_set = false;
    int bound = 3;
    bool run_dedup = false;
    std::string out_dir = ".";
    bool write_out = false;

    auto* c_check = app.add_subcommand("check", "classify a polytope against the duality predicates");
    c_check->add_option("file", file_arg)->required();
    auto* c_dual = app.add_subcommand("dual", "polar dual of a polytope");
    c_dual->add_option("file", file_arg)->required();
    auto* c_circ = app.add_subcommand("circ", "dual of the lattice hull (the circ operator)");
    c_circ->add_option("file", file_arg)->required();
    auto* c_bullet = app.add_subcommand("bullet", "lattice hull of the polar dual (the bullet operator)");
    c_bullet->add_option("file", file_arg)->required();
    auto* c_nefcheck = app.add_subcommand("nef-check", "test a Minkowski partition for the Q-nef property");
    c_nefcheck->add_option("--parts", parts_args)->required()->expected(-1);
    auto* c_nefdual = app.add_subcommand("nef-dual", "dualize a Q-nef-partition; writes the dual part files");
    c_nefdual->add_option("--parts", parts_args)->required()->expected(-1);
    c_nefdual->add_option("--out-dir", out_dir);
    auto* c_cayley = app.add_subcommand("cayley", "Cayley cone of a tuple of polytopes");
    c_cayley->add_option("--parts", parts_args)->required()->expected(-1);
    auto* c_conecheck = app.add_subcommand("cone-check", "Gorenstein / reflexive / almost-reflexive cone report");
    c_conecheck->add_option("file", file_arg)->required();
    auto* c_bulletcone = app.add_subcommand("bullet-cone", "bullet involution of an almost reflexive Gorenstein cone");
    c_bulletcone->add_option("file", file_arg)->required();
    auto* c_emitci = app.add_subcommand("emit-ci", "emit complete-intersection equations of a Q-nef-partition");
    c_emitci->add_option("--parts", parts_args)->required()->expected(-1);
    c_emitci->add_option("--seed", seed_val)->each([&](const std::string&) { seed_set = true; });
    auto* c_emitgcy = app.add_subcommand("emit-gcy", "emit the generalized Calabi-Yau equation of a cone");
    c_emitgcy->add_option("file", file_arg)->required();
    c_emitgcy->add_option("--seed", seed_val)->each([&](const std::string&) { seed_set = true; });
    auto* c_enum2d = app.add_subcommand("enumerate-2d", "enumerate reflexive polygons with vertices in a box");
    c_enum2d->add_option("--bound", bound)->required();
    c_enum2d->add_flag("--dedup", run_dedup, "also report unimodular class count");
    c_enum2d->add_option("--out-dir", out_dir)->each([&](const std::string&) { write_out = true; });
    auto* c_dedup = app.add_subcommand("dedup", "group polytope files by unimodular equivalence");
    c_dedup->add_option("files", files_args)->required()->expected(-1);

    try {
        std::vector<const char*> argv;
        argv.push_back("qreflex");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    }
    if (seed_set) opt.seed = seed_val;
    opt.out_dir = out_dir;

    RunReport rep;
    auto t0 = std::chrono::steady_clock::now();
    int exit_code = 0;

    try {
        if (app.got_subcommand(c_check)) {
            rep.command = "check";
            Polytope P = detail::load_polytope(file_arg, rep);
            auto r = classify(P);
            auto flag = [&](const char* name, bool v) {
                rep.results[name] = v;
                rep.text.push_back(std::string(name) + ": " + (v ? "true" : "false"));
            };
            flag("is_lattice", r.is_lattice);
            flag("zero_interior", r.zero_interior);
            flag("is_canonical_fano", r.is_canonical_fano);
            flag("is_reflexive", r.is_reflexive);
            flag("is_q_reflexive", r.is_q_reflexive);
            flag("is_almost_reflexive", r.is_almost_reflexive);
            if (r.non_integral_vertex) {
                rep.text.push_back("witness non_integral_vertex: " + detail::vec_str(*r.non_integral_vertex));
                rep.results["witness_non_integral_vertex"] = detail::vec_str(*r.non_integral_vertex);
            }
            if (r.interior_obstruction) {
                rep.text.push_back("witness zero_interior: facet offset " + r.interior_obstruction->offset.to_string());
                rep.results["witness_zero_interior_offset"] = r.interior_obstruction->offset.to_string();
            }
            if (r.extra_interior_point) {
                rep.text.push_back("witness extra_interior_point: " + detail::vec_str(*r.extra_interior_point));
                rep.results["witness_extra_interior_point"] = detail::vec_str(*r.extra_interior_point);
            }
            if (r.non_integral_dual_vertex) {
                rep.text.push_back("witness non_integral_dual_vertex: " + detail::vec_str(*r.non_integral_dual_vertex));
                rep.results["witness_non_integral_dual_vertex"] = detail::vec_str(*r.non_integral_dual_vertex);
            }
            if (opt.strict && !(r.is_canonical_fano && r.is_reflexive && r.is_q_reflexive && r.is_almost_reflexive))
                exit_code = 1;
        } else if (app.got_subcommand(c_dual) || app.got_subcommand(c_circ) || app.got_subcommand(c_bullet)) {
            bool is_dual = app.got_subcommand(c_dual), is_circ = app.got_subcommand(c_circ);
            rep.command = is_dual ? "dual" : is_circ ? "circ" : "bullet";
            Polytope P = detail::load_polytope(file_arg, rep);
            Polytope R = is_dual ? polar_dual(P) : is_circ ? circ_dual(P) : bullet_dual(P);
            rep.results["polytope"] = detail::polytope_json(R);
            rep.text.push_back(print_polytope(R));
        } else if (app.got_subcommand(c_nefcheck) || app.got_subcommand(c_nefdual) || app.got_subcommand(c_emitci) ||
                   app.got_subcommand(c_cayley)) {
            std::vector<Polytope> parts;
            for (const auto& f : parts_args) parts.push_back(detail::load_polytope(f, rep));
            if (app.got_subcommand(c_cayley)) {
                rep.command = "cayley";
                GradedCone C = cayley_cone(parts);
                rep.results["cone"] = print_cone(C);
                rep.text.push_back(print_cone(C));
                if (C.height) {
                    rep.results["height"] = detail::vec_str(*C.height);
                    rep.text.push_back("height: " + detail::vec_str(*C.height));
                }
            } else {
                MinkowskiPartition part(parts);
                if (app.got_subcommand(c_nefcheck)) {
                    rep.command = "nef-check";
                    bool nef = is_nef_partition(part);
                    bool qnef = is_q_nef_partition(part);
                    bool proper = is_proper(part);
                    rep.results["is_nef_partition"] = nef;
                    rep.results["is_q_nef_partition"] = qnef;
                    rep.results["is_proper"] = proper;
                    rep.text.push_back(std::string("is_nef_partition: ") + (nef ? "true" : "false"));
                    rep.text.push_back(std::string("is_q_nef_partition: ") + (qnef ? "true" : "false"));
                    rep.text.push_back(std::string("is_proper: ") + (proper ? "true" : "false"));
                    if (auto why = q_nef_partition_failure(part)) {
                        rep.results["failure"] = *why;
                        rep.text.push_back("failure: " + *why);
                    }
                    if (opt.strict && !qnef) exit_code = 1;
                } else if (app.got_subcommand(c_nefdual)) {
                    rep.command = "nef-dual";
                    auto cert = verify_duality(part, cayley_identity_holds);
                    rep.results["identities"] = json::object();
                    for (const auto& [name, res] : cert.identity_results) {
                        rep.results["identities"][name] = res.pass;
                        rep.text.push_back("identity " + name + ": " + (res.pass ? "pass" : "FAIL"));
                    }
                    for (size_t j = 0; j < cert.dual_parts.size(); ++j) {
                        std::string path = opt.out_dir + "/nabla_" + std::to_string(j + 1) + ".poly";
                        detail::write_file(path, print_polytope(cert.dual_parts[j]));
                        rep.text.push_back("wrote " + path);
                        rep.results["outputs"].push_back(path);
                    }
                    if (opt.strict && !cert.all_pass()) exit_code = 1;
                } else {
                    rep.command = "emit-ci";
                    rep.seed = opt.seed;
                    auto emission = emit_ci_equations(part, opt.seed);
                    rep.results["equations"] = print_laurent(emission.system);
                    for (const auto& w : emission.warnings) {
                        rep.results["warnings"].push_back(w);
                        rep.text.push_back("warning: " + w);
                    }
                    if (!emission.multi_membership_rays.empty())
                        rep.text.push_back("note: rays in several dual parts: " +
                                           std::to_string(emission.multi_membership_rays.size()));
                    rep.text.push_back(print_laurent(emission.system));
                    rep.text.push_back(pretty_laurent(emission.system));
                }
            }
        } else if (app.got_subcommand(c_conecheck)) {
            rep.command = "cone-check";
            GradedCone C = detail::load_cone(file_arg, rep);
            bool gor = C.height.has_value();
            rep.results["is_gorenstein"] = gor;
            rep.text.push_back(std::string("is_gorenstein: ") + (gor ? "true" : "false"));
            if (gor) {
                rep.text.push_back("height: " + detail::vec_str(*C.height));
                rep.results["height"] = detail::vec_str(*C.height);
                auto refl = is_reflexive_gorenstein(C);
                rep.results["reflexive_index"] = refl ? json(*refl) : json(nullptr);
                rep.text.push_back("reflexive_gorenstein_index: " + (refl ? std::to_string(*refl) : "none"));
                auto almost = is_almost_reflexive_gorenstein(C);
                rep.results["almost_reflexive_index"] = almost ? json(*almost) : json(nullptr);
                rep.text.push_back("almost_reflexive_index: " + (almost ? std::to_string(*almost) : "none"));
                if (C.interior_height_point)
                    rep.text.push_back("interior_height_point: " + detail::vec_str(*C.interior_height_point));
                if (opt.strict && !almost) exit_code = 1;
            } else if (opt.strict) {
                exit_code = 1;
            }
        } else if (app.got_subcommand(c_bulletcone)) {
            rep.command = "bullet-cone";
            GradedCone C = detail::load_cone(file_arg, rep);
            GradedCone B = bullet_cone(C);
            rep.results["cone"] = print_cone(B);
            rep.text.push_back(print_cone(B));
        } else if (app.got_subcommand(c_emitgcy)) {
            rep.command = "emit-gcy";
            rep.seed = opt.seed;
            GradedCone C = detail::load_cone(file_arg, rep);
            LaurentSystem sys = emit_generalized_cy(C, opt.seed);
            rep.results["equation"] = print_laurent(sys);
            rep.text.push_back(print_laurent(sys));
            rep.text.push_back(pretty_laurent(sys));
        } else if (app.got_subcommand(c_enum2d)) {
            rep.command = "enumerate-2d";
            auto polys = enumerate_reflexive_polygons(bound);
            rep.results["bound"] = bound;
            rep.results["count"] = polys.size();
            rep.text.push_back("bound: " + std::to_string(bound));
            rep.text.push_back("reflexive polygons: " + std::to_string(polys.size()));
            if (run_dedup) {
                size_t classes = gl_class_count(polys);
                rep.results["classes"] = classes;
                rep.text.push_back("unimodular classes: " + std::to_string(classes));
            }
            if (write_out) {
                for (size_t i = 0; i < polys.size(); ++i) {
                    char name[64];
                    snprintf(name, sizeof name, "/reflexive2d_%05zu.poly", i);
                    detail::write_file(opt.out_dir + name, print_polytope(polys[i]));
                }
                rep.text.push_back("wrote " + std::to_string(polys.size()) + " files to " + opt.out_dir);
            }
        } else if (app.got_subcommand(c_dedup)) {
            rep.command = "dedup";
            std::vector<Polytope> polys;
            for (const auto& f : files_args) polys.push_back(detail::load_polytope(f, rep));
            auto reps = dedup_gl(polys);
            rep.results["inputs"] = polys.size();
            rep.results["classes"] = reps.size();
            rep.text.push_back("inputs: " + std::to_string(polys.size()));
            rep.text.push_back("classes: " + std::to_string(reps.size()));
            for (const auto& R : reps) rep.text.push_back("representative:\n" + print_polytope(R));
        }
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    if (opt.timing) {
        auto t1 = std::chrono::steady_clock::now();
        rep.timing_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    }
    rep.render(out, opt.use_json);
    return exit_code;
}

}  // namespace qreflex::cli
