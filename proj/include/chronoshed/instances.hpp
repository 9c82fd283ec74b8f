#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "chronoshed/job.hpp"
#include "chronoshed/oracle.hpp"

namespace chronoshed {

// A named instance together with what is provably known about it, so harnesses
// can assert against ground truth instead of recomputing it.
struct Fixture {
    std::string name;
    AnyInstance instance;
    std::optional<Rat> optimum;          // known optimal cost
    std::optional<Rat> lp_optimum;       // known fractional-relaxation cost
    std::optional<Rat> adversarial_cost; // minimal-solution cost under adversarial_order
    std::vector<int> adversarial_order;  // close-order prefix realizing adversarial_cost
    std::optional<BusyOpt> warm;         // hand-built packing achieving `optimum`
};

// Slotted family where closing slots in the wrong order costs almost three times
// the optimum: two long flexible jobs, a saturated strip of rigid and unit jobs
// in the middle. Optimum g, adversarial minimal solution 3g-2. Needs g >= 2.
Fixture tight_minimal(int g);

// g disjoint slot pairs, each wanted by g+1 unit jobs. Fractional optimum g+1,
// integral optimum 2g.
Fixture integrality_gap(int g);

// g staggered cliques of 2g unit interval jobs overlapping by eps, plus 2g
// flexible jobs spanning everything. Optimal packing 2g+2-eps; greedy tracking
// tears the flexible jobs apart. Needs 0 < eps < 1/2.
Fixture tracking_gadget(int g, const Rat& eps);

// Staircase of n interval jobs of length n, all sharing a common point. Optimum
// from the consecutive-blocks dynamic program valid for proper clique instances.
Fixture clique(int n, int g);

// Seeded slotted instance: windows first, lengths uniform in the window, whole
// draws resampled until the instance is feasible (bounded retries).
Fixture random_active(int n, int T, int g, std::uint64_t seed);

// Seeded continuous instance, half interval jobs and half flexible. integer_only
// pins every value to the integer grid; otherwise denominators up to 4 appear.
Fixture random_busy(int n, int g, std::uint64_t seed, bool integer_only);

// Harness variants outside the named kinds.
BusyInstance random_interval_busy(int n, int g, std::uint64_t seed, bool integer_only);
BusyInstance random_flexible_busy(int n, int horizon, std::uint64_t seed); // integer, unbounded g

// Uniform integer in [lo, hi]: mt19937_64 output reduced by modulo. Fixed here
// so that seeds mean the same thing on every platform.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi);

// Kind by name with key=value parameters, as the command line passes them.
// Throws SchemaError on unknown kinds, missing or out-of-range parameters.
Fixture generate(const std::string& kind, const std::map<std::string, std::string>& params);

} // namespace chronoshed
