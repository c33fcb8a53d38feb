// packbound: sphere-packing bound computations on point sets and graphs.
//
// Subcommands: bound, axioms, sweep, certify. Exit codes: 0 success,
// 2 parse/input error, 3 size cap exceeded, 4 solver failure,
// 5 infeasible certificate, 6 axiom-suite failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "packbound/geometry.hpp"
#include "packbound/graph.hpp"
#include "packbound/lasserre.hpp"
#include "packbound/radial.hpp"
#include "packbound/sweep.hpp"
#include "packbound/theta.hpp"

using nlohmann::json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitCap = 3;
constexpr int kExitSolver = 4;
constexpr int kExitInfeasible = 5;
constexpr int kExitAxioms = 6;

struct Common {
    std::string config_path;
    int workers = 0;
    std::uint64_t seed = 1;
    std::string output;
    double bound_tol = -1.0, sdp_gap_tol = -1.0, sdp_res_tol = -1.0, geom_tol = -1.0;
    int cap_alpha = -1, cap_chi = -1, cap_cov = -1, cap_theta = -1, cap_theta_prime = -1;
};

void apply_common(const Common& c) {
    if (c.workers > 0) pb::set_workers(c.workers);
    if (const char* env = std::getenv("PACKBOUND_WORKERS")) {
        int w = std::atoi(env);
        if (w > 0) pb::set_workers(w);
    }
    if (c.bound_tol > 0.0) pb::tols().bound_abs = c.bound_tol;
    if (c.sdp_gap_tol > 0.0) pb::tols().sdp_gap = c.sdp_gap_tol;
    if (c.sdp_res_tol > 0.0) pb::tols().sdp_res = c.sdp_res_tol;
    if (c.geom_tol > 0.0) pb::tols().geom = c.geom_tol;
    if (c.cap_alpha > 0) pb::caps().alpha_vertices = c.cap_alpha;
    if (c.cap_chi > 0) pb::caps().chi_vertices = c.cap_chi;
    if (c.cap_cov > 0) pb::caps().cov_points = c.cap_cov;
    if (c.cap_theta > 0) pb::caps().theta_vertices = c.cap_theta;
    if (c.cap_theta_prime > 0) pb::caps().theta_prime_vertices = c.cap_theta_prime;
}

// key=value config files merge under explicit flags: a key only applies when
// the matching --key is absent from the command line
std::vector<std::string> merge_config(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string path;
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") path = args[i + 1];
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw pb::ParseError("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line[0] == '[') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw pb::ParseError("config line without '=': " + line);
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        bool overridden = false;
        for (const auto& a : args)
            if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) overridden = true;
        if (!overridden) args.push_back("--" + key + "=" + value);
    }
    return args;
}

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config_path, "key=value config file; command-line flags win");
    cmd->add_option("--workers", c.workers, "worker count (PACKBOUND_WORKERS overrides)");
    cmd->add_option("--seed", c.seed, "random seed");
    cmd->add_option("--output,-o", c.output, "output file (default stdout)");
    cmd->add_option("--bound-tol", c.bound_tol, "bound-level comparison tolerance (default 1e-5)");
    cmd->add_option("--sdp-gap-tol", c.sdp_gap_tol, "solver relative gap target (default 1e-8)");
    cmd->add_option("--sdp-res-tol", c.sdp_res_tol, "solver residual target (default 1e-7)");
    cmd->add_option("--geom-tol", c.geom_tol, "strict-inequality distance tolerance (default 1e-9)");
    cmd->add_option("--cap-alpha", c.cap_alpha, "exact independence-number search cap (default 40)");
    cmd->add_option("--cap-chi", c.cap_chi, "exact coloring search cap (default 24)");
    cmd->add_option("--cap-cov", c.cap_cov, "exact covering search cap (default 20)");
    cmd->add_option("--cap-theta", c.cap_theta, "theta/theta+ vertex cap (default 200)");
    cmd->add_option("--cap-theta-prime", c.cap_theta_prime, "theta' vertex cap (default 120)");
}

std::ostream& open_output(const Common& c, std::ofstream& file) {
    if (c.output.empty()) return std::cout;
    file.open(c.output);
    if (!file) throw pb::ParseError("cannot open output file: " + c.output);
    return file;
}

int run_bound(const Common& common, const std::string& points_path, const std::string& graph_path,
              bool all, bool want_pack, bool want_cov, bool theta, bool theta_prime, bool theta_plus,
              int las_t) {
    apply_common(common);
    std::ofstream file;
    std::ostream& out = open_output(common, file);
    json result = json::array();

    std::optional<pb::PointConfiguration> points;
    std::optional<pb::Graph> graph;
    if (!points_path.empty()) points = pb::PointConfiguration::read_file(points_path);
    if (!graph_path.empty()) graph = pb::Graph::read_file(graph_path);
    if (!points && !graph) throw pb::ParseError("bound: need --points or --graph");
    pb::Graph g = graph ? *graph : pb::conflict_graph(*points);

    if (all) {
        want_pack = want_cov = points.has_value();
        theta = theta_prime = theta_plus = true;
        if (las_t <= 0) las_t = 1;
    }

    if (want_pack) {
        if (!points) throw pb::ParseError("bound: --pack needs --points");
        result.push_back({{"bound", "pack"}, {"n", points->size()}, {"value", pb::pack(*points)}});
    }
    if (want_cov) {
        if (!points) throw pb::ParseError("bound: --cov needs --points");
        result.push_back({{"bound", "cov"}, {"n", points->size()}, {"value", pb::cov(*points)}});
    }
    auto emit_theta = [&](pb::ThetaVariant v) {
        pb::ThetaReport r = pb::theta_report(g, v);
        if (r.status != pb::SdpStatus::Optimal) throw std::runtime_error("solver failure");
        result.push_back(json::parse(pb::theta_report_json(r)));
    };
    if (theta_prime) emit_theta(pb::ThetaVariant::ThetaPrime);
    if (theta) emit_theta(pb::ThetaVariant::Theta);
    if (theta_plus) emit_theta(pb::ThetaVariant::ThetaPlus);
    if (las_t > 0) {
        pb::LasReport r = pb::las_report(g, las_t);
        if (r.status != pb::SdpStatus::Optimal) throw std::runtime_error("solver failure");
        result.push_back(json::parse(pb::las_report_json(r)));
    }
    out << result.dump(2) << "\n";
    return 0;
}

int run_axioms(const Common& common, std::vector<std::string> bound_names, int cases, int max_points,
               int max_dim, bool inject_faulty) {
    apply_common(common);
    if (cases <= 0 || max_points <= 0 || max_dim < 1 || max_dim > 3)
        throw pb::ParseError("axioms: cases and max-points must be positive, max-dim in 1..3");
    std::ofstream file;
    std::ostream& out = open_output(common, file);

    if (bound_names.empty())
        bound_names = {"pack", "cov", "theta-prime", "theta", "theta-plus", "las-prime-1"};

    struct Entry {
        std::string name;
        std::function<double(const pb::PointConfiguration&)> eval;
        bool exact;
    };
    std::vector<Entry> entries;
    for (const auto& name : bound_names) {
        auto id = pb::bound_from_string(name);
        if (!id) throw pb::ParseError("axioms: unknown bound " + name);
        bool exact = (*id == pb::BoundId::Pack || *id == pb::BoundId::Cov || *id == pb::BoundId::ChiCover);
        entries.push_back({name, [id](const pb::PointConfiguration& c) { return pb::evaluate_bound(*id, c); },
                           exact});
    }
    if (inject_faulty) {
        // harness self-test: point count breaks the sphere bound
        entries.push_back({"faulty", [](const pb::PointConfiguration& c) { return double(c.size()); }, true});
    }

    json report = json::array();
    bool all_ok = true;
    for (const auto& entry : entries) {
        for (pb::AxiomId id : {pb::AxiomId::SphereBound, pb::AxiomId::Lipschitz, pb::AxiomId::Union,
                               pb::AxiomId::Mesh}) {
            auto cs = pb::axiom_cases(id, cases, common.seed, max_points, max_dim);
            const double tol = entry.exact ? 0.0 : pb::tols().bound_abs;
            int pass = 0, fail = 0;
            for (const auto& ac : cs) {
                bool ok = true;
                switch (ac.id) {
                case pb::AxiomId::SphereBound:
                    ok = std::fabs(entry.eval(ac.configs[0]) - 1.0) <= tol;
                    break;
                case pb::AxiomId::Lipschitz:
                    ok = entry.eval(ac.configs[0]) <= entry.eval(ac.configs[1]) + tol;
                    break;
                case pb::AxiomId::Union:
                    ok = std::fabs(entry.eval(ac.configs[2]) - entry.eval(ac.configs[0]) -
                                   entry.eval(ac.configs[1])) <= tol;
                    break;
                case pb::AxiomId::Mesh:
                    ok = entry.eval(ac.configs[0]) <= entry.eval(ac.configs[1]) + tol;
                    break;
                }
                (ok ? pass : fail)++;
            }
            const char* axiom_name = id == pb::AxiomId::SphereBound ? "sphere-bound"
                                     : id == pb::AxiomId::Lipschitz ? "lipschitz"
                                     : id == pb::AxiomId::Union     ? "union"
                                                                    : "mesh";
            report.push_back(
                {{"bound", entry.name}, {"axiom", axiom_name}, {"pass", pass}, {"fail", fail}});
            if (fail > 0) all_ok = false;
        }
    }
    out << report.dump(2) << "\n";
    return all_ok ? 0 : kExitAxioms;
}

int run_sweep(const Common& common, const std::string& bound_name, int dim, std::vector<double> rs,
              std::vector<double> hs, const std::string& csv) {
    apply_common(common);
    auto id = pb::bound_from_string(bound_name);
    if (!id) throw pb::ParseError("sweep: unknown bound " + bound_name);
    if (dim < 1 || rs.empty() || hs.empty()) throw pb::ParseError("sweep: need --dim, --r, --h");
    pb::SweepRecord rec = pb::delta_sweep(*id, dim, rs, hs, csv);
    if (csv.empty()) {
        std::cout << pb::sweep_csv_header() << "\n";
        for (const auto& row : rec.rows) std::cout << pb::sweep_csv_row(row) << "\n";
    }
    for (const auto& row : rec.rows)
        if (row.status == "cap_exceeded") return kExitCap;
    return 0;
}

int run_certify(const Common& common, const std::string& profile, int dim,
                const std::string& variant_name) {
    apply_common(common);
    if (dim < 1) throw pb::ParseError("certify: dim must be positive");
    std::ofstream file;
    std::ostream& out = open_output(common, file);
    pb::ThetaVariant variant = pb::ThetaVariant::ThetaPrime;
    if (variant_name == "theta")
        variant = pb::ThetaVariant::Theta;
    else if (variant_name == "theta-plus")
        variant = pb::ThetaVariant::ThetaPlus;
    else if (variant_name != "theta-prime")
        throw pb::ParseError("certify: unknown variant " + variant_name);

    pb::RadialProfile f = profile == "ball-autocorr" ? pb::ball_autocorrelation(dim)
                                                     : pb::RadialProfile::from_json_file(profile);
    pb::LpCertificateReport rep = pb::lp_certificate_check(f, variant);
    out << pb::lp_report_json(rep) << "\n";
    return rep.feasible ? 0 : kExitInfeasible;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sphere-packing bound computations on point sets and graphs"};
    app.require_subcommand(1);

    Common common;

    auto* bound = app.add_subcommand("bound", "compute bounds for a point set or graph");
    std::string points_path, graph_path;
    bool all = false, want_pack = false, want_cov = false, theta = false, theta_prime = false,
         theta_plus = false;
    int las_t = 0;
    bound->add_option("--points", points_path, "point configuration file (\"d n\" header)");
    bound->add_option("--graph", graph_path, "graph file (\"n m\" header)");
    bound->add_flag("--all", all, "every applicable bound");
    bound->add_flag("--pack", want_pack, "exact packing number");
    bound->add_flag("--cov", want_cov, "exact covering number");
    bound->add_flag("--theta", theta, "Lovasz theta");
    bound->add_flag("--theta-prime", theta_prime, "Schrijver theta'");
    bound->add_flag("--theta-plus", theta_plus, "Szegedy theta+");
    bound->add_option("--las-prime", las_t, "Lasserre level t bound");
    add_common(bound, common);

    auto* axioms = app.add_subcommand("axioms", "randomized packing-bound axiom suite");
    std::vector<std::string> axiom_bounds;
    int cases = 200, max_points = 8, max_dim = 3;
    bool inject_faulty = false;
    axioms->add_option("--bounds", axiom_bounds, "bounds to test (default: all six)");
    axioms->add_option("--cases", cases, "cases per axiom per bound");
    axioms->add_option("--max-points", max_points, "max points per configuration");
    axioms->add_option("--max-dim", max_dim, "max ambient dimension");
    axioms->add_flag("--inject-faulty-bound", inject_faulty, "harness self-test hook");
    add_common(axioms, common);

    auto* sweep = app.add_subcommand("sweep", "Euclidean-limit scaling sweep on cube meshes");
    sweep->set_help_flag("--help", "print help"); // frees -h/--h for the mesh spacing
    std::string sweep_bound = "pack", csv;
    int sweep_dim = 1;
    std::vector<double> rs, hs;
    sweep->add_option("--bound", sweep_bound, "bound id (pack, cov, theta-prime, ...)");
    sweep->add_option("--dim", sweep_dim, "mesh dimension");
    sweep->add_option("--r", rs, "box side lengths")->delimiter(',');
    sweep->add_option("--h", hs, "mesh spacings")->delimiter(',');
    sweep->add_option("--out", csv, "append-only CSV output (resumable)");
    add_common(sweep, common);

    auto* certify = app.add_subcommand("certify", "check a radial LP-bound certificate");
    std::string profile = "ball-autocorr", variant_name = "theta-prime";
    int dim = 1;
    certify->add_option("--profile", profile, "ball-autocorr or a profile JSON file");
    certify->add_option("--dim", dim, "ambient dimension");
    certify->add_option("--variant", variant_name, "theta-prime, theta, or theta-plus");
    add_common(certify, common);

    std::vector<std::string> args;
    try {
        args = merge_config(argc, argv);
    } catch (const pb::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    try {
        std::vector<const char*> argv2;
        for (const auto& a : args) argv2.push_back(a.c_str());
        app.parse(int(argv2.size()), argv2.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (bound->parsed())
            return run_bound(common, points_path, graph_path, all, want_pack, want_cov, theta,
                             theta_prime, theta_plus, las_t);
        if (axioms->parsed())
            return run_axioms(common, axiom_bounds, cases, max_points, max_dim, inject_faulty);
        if (sweep->parsed()) return run_sweep(common, sweep_bound, sweep_dim, rs, hs, csv);
        if (certify->parsed()) return run_certify(common, profile, dim, variant_name);
    } catch (const pb::SizeCapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const pb::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return 0;
}
