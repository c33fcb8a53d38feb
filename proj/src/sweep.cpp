#include "packbound/sweep.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace pb {

const char* to_string(BoundId b) {
    switch (b) {
    case BoundId::Pack: return "pack";
    case BoundId::Cov: return "cov";
    case BoundId::ChiCover: return "chi-cover";
    case BoundId::Theta: return "theta";
    case BoundId::ThetaPrime: return "theta-prime";
    case BoundId::ThetaPlus: return "theta-plus";
    case BoundId::LasPrime1: return "las-prime-1";
    case BoundId::LasPrime2: return "las-prime-2";
    case BoundId::LasPrime3: return "las-prime-3";
    }
    return "?";
}

std::optional<BoundId> bound_from_string(const std::string& s) {
    for (BoundId b : {BoundId::Pack, BoundId::Cov, BoundId::ChiCover, BoundId::Theta,
                      BoundId::ThetaPrime, BoundId::ThetaPlus, BoundId::LasPrime1, BoundId::LasPrime2,
                      BoundId::LasPrime3})
        if (s == to_string(b)) return b;
    return std::nullopt;
}

double evaluate_bound(BoundId b, const PointConfiguration& c) {
    switch (b) {
    case BoundId::Pack: return double(pack(c));
    case BoundId::Cov: return double(cov(c));
    case BoundId::ChiCover: return double(chromatic_number(complement(conflict_graph(c))));
    case BoundId::Theta: return theta_bound_on_points(c, ThetaVariant::Theta);
    case BoundId::ThetaPrime: return theta_bound_on_points(c, ThetaVariant::ThetaPrime);
    case BoundId::ThetaPlus: return theta_bound_on_points(c, ThetaVariant::ThetaPlus);
    case BoundId::LasPrime1: return las_on_points(c, 1);
    case BoundId::LasPrime2: return las_on_points(c, 2);
    case BoundId::LasPrime3: return las_on_points(c, 3);
    }
    return 0.0;
}

std::string sweep_csv_header() { return "bound,dim,r,h,value,value_over_rn,wall_ms,status"; }

std::string sweep_csv_row(const SweepRow& row) {
    std::ostringstream os;
    os.precision(17);
    os << to_string(row.bound) << ',' << row.dim << ',' << row.r << ',' << row.h << ',' << row.value
       << ',' << row.value_over_rn << ',' << row.wall_ms << ',' << row.status;
    return os.str();
}

namespace {

struct TupleKey {
    std::string bound;
    int dim;
    double r, h;
    bool operator<(const TupleKey& o) const {
        if (bound != o.bound) return bound < o.bound;
        if (dim != o.dim) return dim < o.dim;
        if (r != o.r) return r < o.r;
        return h < o.h;
    }
};

std::set<TupleKey> load_existing(const std::string& path, std::vector<SweepRow>& rows, BoundId want,
                                 int dim) {
    std::set<TupleKey> seen;
    std::ifstream in(path);
    if (!in) return seen;
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> f;
        while (std::getline(ls, field, ',')) f.push_back(field);
        if (f.size() != 8) continue;
        TupleKey key{f[0], std::stoi(f[1]), std::stod(f[2]), std::stod(f[3])};
        seen.insert(key);
        if (f[0] == to_string(want) && key.dim == dim) {
            SweepRow row;
            row.bound = want;
            row.dim = key.dim;
            row.r = key.r;
            row.h = key.h;
            row.value = std::stod(f[4]);
            row.value_over_rn = std::stod(f[5]);
            row.wall_ms = std::stod(f[6]);
            row.status = f[7];
            rows.push_back(row);
        }
    }
    return seen;
}

} // namespace

SweepRecord delta_sweep(BoundId b, int n, const std::vector<double>& rs, const std::vector<double>& hs,
                        const std::string& csv_path) {
    SweepRecord rec;
    rec.bound = b;
    rec.dim = n;
    std::set<TupleKey> seen;
    if (!csv_path.empty()) seen = load_existing(csv_path, rec.rows, b, n);

    struct Job {
        double r, h;
    };
    std::vector<Job> jobs;
    for (double r : rs)
        for (double h : hs) {
            TupleKey key{to_string(b), n, r, h};
            if (seen.count(key)) continue;
            jobs.push_back({r, h});
        }

    std::vector<SweepRow> fresh(jobs.size());
#pragma omp parallel for schedule(dynamic, 1) if (jobs.size() > 1)
    for (int k = 0; k < int(jobs.size()); ++k) {
        SweepRow row;
        row.bound = b;
        row.dim = n;
        row.r = jobs[k].r;
        row.h = jobs[k].h;
        auto t0 = std::chrono::steady_clock::now();
        try {
            PointConfiguration mesh = cube_mesh(n, jobs[k].r, jobs[k].h);
            row.value = evaluate_bound(b, mesh);
            row.value_over_rn = row.value / std::pow(jobs[k].r, n);
            row.status = "ok";
        } catch (const SizeCapExceeded&) {
            row.status = "cap_exceeded";
        } catch (const std::exception&) {
            row.status = "error";
        }
        row.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        fresh[k] = row;
    }

    if (!csv_path.empty() && !fresh.empty()) {
        // single writer, appended in job order
        bool fresh_file = !std::ifstream(csv_path).good();
        std::ofstream out(csv_path, std::ios::app);
        if (fresh_file) out << sweep_csv_header() << '\n';
        for (const auto& row : fresh) out << sweep_csv_row(row) << '\n';
    }
    for (auto& row : fresh) rec.rows.push_back(std::move(row));
    return rec;
}

SandwichReport sandwich_consistency_report(int n, double r, double h, int t) {
    SandwichReport rep;
    PointConfiguration mesh = cube_mesh(n, r, h);
    auto add = [&](const std::string& name, double v) { rep.values.push_back({name, v}); };
    add("pack", double(pack(mesh)));
    add("las-prime-" + std::to_string(t), las_on_points(mesh, t));
    add("theta-prime", theta_bound_on_points(mesh, ThetaVariant::ThetaPrime));
    add("theta", theta_bound_on_points(mesh, ThetaVariant::Theta));
    add("theta-plus", theta_bound_on_points(mesh, ThetaVariant::ThetaPlus));
    add("chi-cover", double(chromatic_number(complement(conflict_graph(mesh)))));
    add("cov", double(cov(mesh)));
    rep.chain_ok = true;
    for (std::size_t k = 0; k + 1 < rep.values.size(); ++k) {
        if (rep.values[k].second > rep.values[k + 1].second + tols().bound_abs) {
            rep.chain_ok = false;
            rep.detail = rep.values[k].first + " > " + rep.values[k + 1].first;
            break;
        }
    }
    return rep;
}

} // namespace pb
