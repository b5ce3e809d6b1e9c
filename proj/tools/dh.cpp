// dh: Coxeter systems, Davis complexes, walls, hierarchies and their
// Euler-characteristic invariants, with JSON reports.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

#include "dh/io.hpp"
#include "dh/report.hpp"

namespace fs = std::filesystem;
using dh::report::json;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_error = 2;

struct Output {
    std::string json_path;
    bool compact = false;
    void emit(const json& report) const {
        std::string text = report.dump(compact ? -1 : 1) + "\n";
        if (json_path.empty())
            std::cout << text;
        else
            dh::write_file(json_path, text);
    }
};

// command echo, minus the report destination (reports must be
// byte-identical wherever they are written)
std::vector<std::string> echo_args(int argc, char** argv) {
    std::vector<std::string> out;
    for (int i = 0; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--json") {
            ++i;
            continue;
        }
        if (a.rfind("--json=", 0) == 0)
            continue;
        out.push_back(std::move(a));
    }
    if (!out.empty())
        out[0] = "dh"; // drop the machine-local binary path
    return out;
}

dh::FiniteQuotient make_quotient(const dh::CoxeterSystem& W,
                                 const std::string& recipe,
                                 const std::string& file) {
    if (!file.empty())
        return dh::parse_quotient(W, dh::read_file(file));
    if (recipe == "trivial")
        return dh::FiniteQuotient::trivial(W);
    if (recipe.rfind("mod-", 0) == 0) {
        const int p = std::stoi(recipe.substr(4));
        return dh::FiniteQuotient::reflection_mod_p(W, p);
    }
    throw dh::Error("unknown quotient recipe: " + recipe +
                    " (use mod-<p>, trivial, or --quotient-file)");
}

int run_command(int argc, char** argv);

int corpus_run(const std::string& dir, bool update,
               const std::string& json_path) {
    const fs::path base(dir);
    const fs::path manifest = base / "manifest.txt";
    std::istringstream lines(dh::read_file(manifest.string()));
    std::string line;
    json results = json::array();
    bool all_ok = true;
    while (std::getline(lines, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line = line.substr(0, hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t)
            toks.push_back(t);
        if (toks.empty())
            continue;
        const std::string name = toks[0];
        // build argv for the subcommand; file arguments are relative to dir
        std::vector<std::string> args{"dh"};
        for (std::size_t i = 1; i < toks.size(); ++i) {
            std::string a = toks[i];
            if (a.rfind("@", 0) == 0)
                a = (base / a.substr(1)).string();
            args.push_back(std::move(a));
        }
        const fs::path tmp = fs::temp_directory_path() /
                             ("dh-corpus-" + name + ".json");
        args.push_back("--json");
        args.push_back(tmp.string());

        std::vector<char*> cargv;
        for (auto& a : args)
            cargv.push_back(a.data());
        const int code = run_command(static_cast<int>(cargv.size()),
                                     cargv.data());
        json got;
        if (fs::exists(tmp)) {
            got = json::parse(dh::read_file(tmp.string()));
            fs::remove(tmp);
        }
        // command echo contains machine-local paths; compare reports only
        json comparable{{"report", got.value("report", json())},
                        {"pass", got.value("pass", false)},
                        {"exit", code}};

        const fs::path golden = base / "golden" / (name + ".json");
        if (update) {
            dh::write_file(golden.string(), comparable.dump(1) + "\n");
            results.push_back({{"name", name}, {"updated", true}});
            continue;
        }
        bool match = false;
        if (fs::exists(golden)) {
            json expect = json::parse(dh::read_file(golden.string()));
            match = (expect == comparable);
        }
        all_ok = all_ok && match;
        results.push_back({{"name", name}, {"match", match}});
    }
    Output out{json_path};
    out.emit(json{{"command", {"dh", "corpus", "run"}},
                  {"inputs", json::object()},
                  {"report", {{"entries", results}, {"updated", update}}},
                  {"pass", all_ok || update}});
    return (all_ok || update) ? exit_pass : exit_fail;
}

int run_command(int argc, char** argv) {
    CLI::App app{"Coxeter systems, Davis complexes, walls and hierarchies"};
    app.require_subcommand(1);
    app.fallthrough();
    dh::Limits limits = dh::Limits::from_env();

    std::string json_path;
    app.add_option("--json", json_path, "write the JSON report to this path");
    bool compact = false;
    app.add_flag("--compact", compact, "single-line JSON reports");

    // ---- group ----
    auto* cmd_group = app.add_subcommand("group", "Cayley ball of a system");
    std::string group_file;
    int group_radius = 2;
    cmd_group->add_option("file", group_file)->required();
    cmd_group->add_option("--ball", group_radius, "ball radius");

    // ---- homology ----
    auto* cmd_hom = app.add_subcommand("homology", "integral homology");
    std::string hom_file;
    bool hom_reduced = false;
    cmd_hom->add_option("file", hom_file)->required();
    cmd_hom->add_flag("--reduced", hom_reduced);

    // ---- sphere-check ----
    auto* cmd_sphere = app.add_subcommand("sphere-check",
                                          "homology sphere certificate");
    std::string sphere_file;
    int sphere_dim = 0;
    cmd_sphere->add_option("file", sphere_file)->required();
    cmd_sphere->add_option("--dim", sphere_dim)->required();

    // ---- nerve ----
    auto* cmd_nerve = app.add_subcommand("nerve", "nerve of a Coxeter system");
    std::string nerve_file, nerve_out;
    int nerve_dim = 0;
    cmd_nerve->add_option("file", nerve_file)->required();
    cmd_nerve->add_option("--dim", nerve_dim,
                          "check the nerve against S^{n-1} and D^{n-1}");
    cmd_nerve->add_option("--out-complex", nerve_out,
                          "write the nerve as a complex file");

    // ---- davis ----
    auto* cmd_davis = app.add_subcommand("davis", "Davis complex ball");
    std::string davis_file, davis_quotient, davis_quotient_file, davis_out;
    int davis_radius = 2;
    cmd_davis->add_option("file", davis_file)->required();
    cmd_davis->add_option("--radius", davis_radius)->required();
    cmd_davis->add_option("--quotient", davis_quotient,
                          "mod-<p> or trivial");
    cmd_davis->add_option("--quotient-file", davis_quotient_file);
    cmd_davis->add_option("--out-complex", davis_out,
                          "write the realization as a complex file");

    // ---- hierarchy ----
    auto* cmd_hier = app.add_subcommand("hierarchy", "run a cutting hierarchy");
    std::string hier_file, hier_quotient = "trivial", hier_quotient_file,
                hier_order, hier_steps_dir;
    int hier_radius = 2;
    bool hier_force = false;
    cmd_hier->add_option("file", hier_file)->required();
    cmd_hier->add_option("--radius", hier_radius)->required();
    cmd_hier->add_option("--quotient", hier_quotient, "mod-<p> or trivial");
    cmd_hier->add_option("--quotient-file", hier_quotient_file);
    cmd_hier->add_option("--order", hier_order,
                         "comma-separated orbit indices");
    cmd_hier->add_option("--emit-steps", hier_steps_dir,
                         "write per-step realizations to this directory");
    cmd_hier->add_flag("--force", hier_force,
                       "run even if the tidy check fails");

    // ---- euler ----
    auto* cmd_euler = app.add_subcommand("euler", "orbifold Euler invariants");
    std::string euler_file;
    cmd_euler->add_option("file", euler_file)->required();

    // ---- charney-davis ----
    auto* cmd_cd = app.add_subcommand("charney-davis",
                                      "Charney-Davis quantity of a complex");
    std::string cd_file;
    cmd_cd->add_option("file", cd_file)->required();

    // ---- trick ----
    auto* cmd_trick = app.add_subcommand("trick", "reflection group trick");
    std::string trick_file, trick_boundary, trick_quotient, trick_quotient_file;
    int trick_radius = 2;
    cmd_trick->add_option("file", trick_file)->required();
    cmd_trick->add_option("--boundary", trick_boundary)->required();
    cmd_trick->add_option("--radius", trick_radius)->required();
    cmd_trick->add_option("--quotient", trick_quotient);
    cmd_trick->add_option("--quotient-file", trick_quotient_file);

    // ---- corpus ----
    auto* cmd_corpus = app.add_subcommand("corpus", "golden fixture runner");
    std::string corpus_action = "run", corpus_dir = "corpus";
    bool corpus_update = false;
    cmd_corpus->add_option("action", corpus_action, "run");
    cmd_corpus->add_option("--dir", corpus_dir);
    cmd_corpus->add_flag("--update", corpus_update,
                         "regenerate the golden fixtures");

    for (CLI::App* sc :
         {cmd_group, cmd_hom, cmd_sphere, cmd_nerve, cmd_davis,
          cmd_hier, cmd_euler, cmd_cd, cmd_trick, cmd_corpus})
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_pass : exit_error;
    }

    Output out{json_path, compact};
    const auto echo = echo_args(argc, argv);
    try {
        if (*cmd_group) {
            const std::string text = dh::read_file(group_file);
            dh::CoxeterSystem W = dh::parse_coxeter(text);
            dh::Group G(W, limits);
            dh::CayleyBall ball = G.ball(group_radius);
            out.emit(dh::report::envelope(
                echo, {{group_file, dh::content_digest(text)}},
                dh::report::ball_report(W, ball), true));
            return exit_pass;
        }
        if (*cmd_hom) {
            const std::string text = dh::read_file(hom_file);
            dh::SimplicialComplex K = dh::parse_complex(text);
            dh::HomologyProfile p = dh::homology(K, hom_reduced, limits);
            out.emit(dh::report::envelope(
                echo, {{hom_file, dh::content_digest(text)}},
                dh::report::profile(p), true));
            return exit_pass;
        }
        if (*cmd_sphere) {
            const std::string text = dh::read_file(sphere_file);
            dh::SimplicialComplex K = dh::parse_complex(text);
            dh::SphereCertificate c =
                dh::is_homology_sphere(K, sphere_dim, limits);
            dh::DiskCertificate dc = dh::is_homology_disk(K, sphere_dim, limits);
            const bool pass = c.all_pass() || dc.pass;
            out.emit(dh::report::envelope(
                echo, {{sphere_file, dh::content_digest(text)}},
                json{{"sphere_check", dh::report::sphere_cert(c)},
                     {"disk_check", dh::report::disk_cert(dc)}},
                pass));
            return pass ? exit_pass : exit_fail;
        }
        if (*cmd_nerve) {
            const std::string text = dh::read_file(nerve_file);
            dh::CoxeterSystem W = dh::parse_coxeter(text);
            dh::Nerve N = dh::build_nerve(W, limits);
            json payload = dh::report::nerve_report(W, N);
            bool pass = true;
            if (cmd_nerve->count("--dim")) {
                dh::ManifoldCertificate mc =
                    dh::manifold_check(N, nerve_dim, limits);
                payload["manifold_check"] = dh::report::manifold_cert(mc);
                pass = mc.sphere.all_pass() || mc.disk.pass;
            }
            if (!nerve_out.empty())
                dh::write_file(nerve_out, dh::format_complex(N.complex));
            out.emit(dh::report::envelope(
                echo, {{nerve_file, dh::content_digest(text)}}, payload, pass));
            return pass ? exit_pass : exit_fail;
        }
        if (*cmd_davis) {
            const std::string text = dh::read_file(davis_file);
            dh::CoxeterSystem W = dh::parse_coxeter(text);
            dh::Nerve N = dh::build_nerve(W, limits);
            auto G = std::make_shared<dh::Group>(W, limits);
            dh::MirroredChamber K = dh::build_chamber(N);
            dh::ChamberComplex U =
                dh::basic_construction(G, K.model, davis_radius);
            const auto walls = dh::walls_in_ball(U);

            json payload{{"chambers", U.n_chambers()},
                         {"radius", davis_radius},
                         {"realization",
                          dh::report::complex_summary(U.realization().complex)},
                         {"walls", dh::report::walls_report(U, walls)},
                         {"link_check",
                          dh::report::link_cert(dh::vertex_link_check(U, N))}};
            bool pass = payload["link_check"]["pass"].get<bool>();
            if (!davis_quotient.empty() || !davis_quotient_file.empty()) {
                dh::FiniteQuotient Q =
                    make_quotient(W, davis_quotient, davis_quotient_file);
                payload["quotient"] = Q.description();
                dh::TorsionCertificate tc = dh::torsion_free_check(N, Q, *G);
                payload["torsion_free"] = dh::report::torsion_cert(W, tc);
                dh::TrivialIntersectionCertificate ti =
                    dh::trivial_intersection_check(U, Q);
                payload["trivial_intersection"] =
                    dh::report::trivial_intersection_cert(W, ti);
                pass = pass && tc.pass && ti.pass;
            }
            if (!davis_out.empty())
                dh::write_file(davis_out,
                               dh::format_complex(U.realization().complex));
            out.emit(dh::report::envelope(
                echo, {{davis_file, dh::content_digest(text)}}, payload, pass));
            return pass ? exit_pass : exit_fail;
        }
        if (*cmd_hier) {
            const std::string text = dh::read_file(hier_file);
            dh::CoxeterSystem W = dh::parse_coxeter(text);
            dh::Nerve N = dh::build_nerve(W, limits);
            auto G = std::make_shared<dh::Group>(W, limits);
            dh::MirroredChamber K = dh::build_chamber(N);
            dh::ChamberComplex U =
                dh::basic_construction(G, K.model, hier_radius);
            dh::FiniteQuotient Q =
                make_quotient(W, hier_quotient, hier_quotient_file);
            dh::WallFamily fam = dh::wall_orbit_family(U, Q);
            if (!hier_order.empty()) {
                std::vector<dh::WallOrbit> reordered;
                std::istringstream os(hier_order);
                std::string tok;
                std::vector<bool> used(fam.orbits.size(), false);
                while (std::getline(os, tok, ',')) {
                    const int i = std::stoi(tok);
                    if (i < 0 || i >= static_cast<int>(fam.orbits.size()))
                        throw dh::Error("--order index out of range");
                    if (!used[i]) {
                        reordered.push_back(fam.orbits[i]);
                        used[i] = true;
                    }
                }
                for (std::size_t i = 0; i < fam.orbits.size(); ++i)
                    if (!used[i])
                        reordered.push_back(fam.orbits[i]);
                fam.orbits = std::move(reordered);
            }
            dh::HierarchyOptions opts;
            opts.force = hier_force;
            dh::HierarchyTrace trace = dh::run_hierarchy(U, fam, opts, limits);
            if (!hier_steps_dir.empty()) {
                fs::create_directories(hier_steps_dir);
                for (std::size_t i = 0; i < trace.stages.size(); ++i)
                    dh::write_file(
                        (fs::path(hier_steps_dir) /
                         ("stage-" + std::to_string(i) + ".cplx"))
                            .string(),
                        dh::format_complex(
                            trace.stages[i]->realization().complex));
            }
            json payload{{"quotient", Q.description()},
                         {"orbits", fam.orbits.size()},
                         {"trace", dh::report::trace_report(W, trace)}};
            out.emit(dh::report::envelope(
                echo, {{hier_file, dh::content_digest(text)}}, payload,
                trace.pass));
            return trace.pass ? exit_pass : exit_fail;
        }
        if (*cmd_euler) {
            const std::string text = dh::read_file(euler_file);
            dh::CoxeterSystem W = dh::parse_coxeter(text);
            dh::Nerve N = dh::build_nerve(W, limits);
            dh::EulerReport r = dh::euler_report(W, N);
            out.emit(dh::report::envelope(
                echo, {{euler_file, dh::content_digest(text)}},
                dh::report::euler_json(r), true));
            return exit_pass;
        }
        if (*cmd_cd) {
            const std::string text = dh::read_file(cd_file);
            dh::SimplicialComplex L = dh::parse_complex(text);
            dh::CharneyDavisReport r = dh::charney_davis(L, limits);
            // a negative quantity on a flag homology 3-sphere would
            // contradict the sign prediction
            const bool pass = !(r.hypotheses_hold && r.dim == 3 && r.sign < 0);
            out.emit(dh::report::envelope(
                echo, {{cd_file, dh::content_digest(text)}},
                dh::report::charney_davis_json(r), pass));
            return pass ? exit_pass : exit_fail;
        }
        if (*cmd_trick) {
            const std::string mtext = dh::read_file(trick_file);
            const std::string btext = dh::read_file(trick_boundary);
            dh::SimplicialComplex M = dh::parse_complex(mtext);
            dh::SimplicialComplex B = dh::parse_complex(btext);
            dh::MirroredManifold MM =
                dh::prepare_mirrored_manifold(M, B, limits);
            std::optional<dh::FiniteQuotient> Q;
            if (!trick_quotient.empty() || !trick_quotient_file.empty())
                Q = make_quotient(MM.system, trick_quotient,
                                  trick_quotient_file);
            dh::TrickOutput T =
                dh::run_trick(MM, trick_radius, Q ? &*Q : nullptr, limits);
            out.emit(dh::report::envelope(
                echo,
                {{trick_file, dh::content_digest(mtext)},
                 {trick_boundary, dh::content_digest(btext)}},
                dh::report::trick_report(T), T.pass));
            return T.pass ? exit_pass : exit_fail;
        }
        if (*cmd_corpus) {
            if (corpus_action != "run")
                throw dh::Error("corpus action must be `run`");
            return corpus_run(corpus_dir, corpus_update, json_path);
        }
    } catch (const dh::ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return exit_error;
    } catch (const dh::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}

} // namespace

int main(int argc, char** argv) { return run_command(argc, argv); }
