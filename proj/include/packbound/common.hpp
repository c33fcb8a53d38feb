#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pb {

// --- error types shared across modules ---------------------------------

struct SizeCapExceeded : std::runtime_error {
    explicit SizeCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct OutsideComplex : std::runtime_error {
    explicit OutsideComplex(const std::string& what) : std::runtime_error(what) {}
};

struct NotPsd : std::runtime_error {
    explicit NotPsd(const std::string& what) : std::runtime_error(what) {}
};

struct InfeasibleInput : std::runtime_error {
    explicit InfeasibleInput(const std::string& what) : std::runtime_error(what) {}
};

struct QuadratureFailure : std::runtime_error {
    explicit QuadratureFailure(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidLattice : std::runtime_error {
    explicit InvalidLattice(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// --- search caps and tolerances -----------------------------------------
//
// Exceeding a cap raises SizeCapExceeded; caps are configuration values and
// callers (sweeps, CLI flags) may raise them explicitly.

struct Caps {
    int alpha_vertices = 40;        // exact independence number search
    int chi_vertices = 24;          // exact chromatic number search
    int hom_vertices = 10;          // homomorphism backtracking, per side
    int cov_points = 20;            // exact covering search (d >= 2)
    int theta_vertices = 200;       // theta / theta+ SDP
    int theta_prime_vertices = 120; // theta' SDP (raise for large sweeps)
    int sdp_order = 2000;           // total matrix order
    int sdp_constraints = 20000;
    std::size_t iset_family = 50000; // |I_t| enumeration cap
    int las_level = 3;               // t cap
    std::size_t las_i2t = 2000;      // |I_2t| cap for SDP assembly
};

struct Tols {
    double geom = 1e-9;       // strict-inequality tolerance for distances
    double bound_abs = 1e-5;  // bound-level comparisons (sandwich chains etc.)
    double sdp_gap = 1e-8;    // solver relative duality gap
    double sdp_res = 1e-7;    // solver residual target
    double psd_floor = 1e-8;  // eigenvalue floor for PSD checks
};

inline Caps& caps() {
    static Caps c;
    return c;
}

inline Tols& tols() {
    static Tols t;
    return t;
}

void set_workers(int n);
int workers();

// --- deterministic random stream -----------------------------------------
//
// splitmix64: identical sequences across platforms, unlike <random>
// distributions.

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) {
        return next_u64() % n; // n is small everywhere we use this
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    Rng fork() { return Rng(next_u64() ^ 0xa0761d6478bd642full); }

private:
    std::uint64_t state_;
};

} // namespace pb
