#pragma once

#include <optional>
#include <string>
#include <vector>

#include "packbound/geometry.hpp"
#include "packbound/lasserre.hpp"
#include "packbound/theta.hpp"

namespace pb {

enum class BoundId { Pack, Cov, ChiCover, Theta, ThetaPrime, ThetaPlus, LasPrime1, LasPrime2, LasPrime3 };

const char* to_string(BoundId b);
std::optional<BoundId> bound_from_string(const std::string& s);

double evaluate_bound(BoundId b, const PointConfiguration& c);

struct SweepRow {
    BoundId bound;
    int dim = 0;
    double r = 0.0, h = 0.0;
    double value = 0.0;
    double value_over_rn = 0.0;
    double wall_ms = 0.0;
    std::string status = "ok";
};

struct SweepRecord {
    BoundId bound;
    int dim = 0;
    std::vector<SweepRow> rows;
};

// Evaluates the bound on cube_mesh(n, r, h) for every (r, h) pair and records
// value / r^n. With a csv path the run is resumable: rows already present for
// a parameter tuple are loaded, not recomputed, and new rows are appended.
SweepRecord delta_sweep(BoundId b, int n, const std::vector<double>& rs, const std::vector<double>& hs,
                        const std::string& csv_path = "");

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

struct SandwichReport {
    std::vector<std::pair<std::string, double>> values; // in chain order
    bool chain_ok = false;
    std::string detail;
};

// pack <= las'_t <= theta' <= theta <= theta+ <= chi-cover <= cov on one mesh.
SandwichReport sandwich_consistency_report(int n, double r, double h, int t = 1);

} // namespace pb
