#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chronoshed/job.hpp"
#include "chronoshed/lp.hpp"
#include "chronoshed/maxflow.hpp"

namespace chronoshed {

// Variable layout of the fractional relaxation: one slot-open variable y_t per slot,
// one assignment variable x_{t,j} per (slot, job) pair. Out-of-window x are fixed to 0
// through their bounds.
struct ActiveLpLayout {
    int T = 0;
    int n = 0;
    int y(int t) const { return t - 1; }
    int x(int t, int j) const { return T + (t - 1) * n + j; }
};

ActiveLpLayout active_lp_layout(const ActiveInstance& inst);

// min sum_t y_t  s.t.  x_{t,j} <= y_t,  sum_j x_{t,j} <= g*y_t,
// sum_t x_{t,j} >= p_j,  0 <= y <= 1,  x >= 0 (fixed 0 outside windows).
LinearProgram build_active_lp(const ActiveInstance& inst);

struct FractionalSolution {
    std::vector<Rat> y;              // y[t-1] for slot t
    std::vector<std::vector<Rat>> x; // x[t-1][j]
    Rat cost() const {
        Rat c = 0;
        for (const auto& v : y) c += v;
        return c;
    }
};

// Exact optimum of the relaxation. Throws InfeasibleError when the instance cannot
// be scheduled at all.
FractionalSolution solve_active_lp(const ActiveInstance& inst);

// Maximal slot ranges ending at each distinct deadline: block i spans
// (deadline_{i-1}, deadline_i], starting from 0, and carries the y-mass inside.
struct DeadlineBlock {
    int index = 0;    // 1-based
    int begin = 0;    // first slot of the block
    int deadline = 0; // last slot of the block
    Rat mass;         // sum of y over the block
    std::vector<std::size_t> jobs; // jobs with this deadline
};

std::vector<DeadlineBlock> deadline_blocks(const ActiveInstance& inst, const std::vector<Rat>& y);

// Push each block's y-mass to the block's late slots (floor(Y) full slots ending at
// the deadline, the fractional remainder just before them), then recompute a feasible
// x for the new y. Objective is unchanged; idempotent.
FractionalSolution right_shift(const ActiveInstance& inst, const FractionalSolution& frac);

enum class SlotClass { Closed, Barely, Half, Fully };

inline SlotClass classify_slot(const Rat& y) {
    if (y == 0) return SlotClass::Closed;
    if (y == 1) return SlotClass::Fully;
    if (y >= Rat(1, 2)) return SlotClass::Half;
    return SlotClass::Barely;
}

// Final charge assignment for one opened slot that was not fully open by itself.
struct ChargeRecord {
    enum class Kind { SelfHalf, Dependent, Trio, Filler };
    Kind kind = Kind::SelfHalf;
    int slot = 0;        // the slot whose opening this record pays for
    Rat value;           // its (merged) fractional y value
    int full_slot = -1;  // Dependent/Trio: the fully open slot charged
    int dep_slot = -1;   // Trio: the earlier dependent completing the triple
    Rat dep_value;       // Trio: that dependent's value
    int half_slot = -1;  // Filler: the half-open slot charged
    Rat half_value;      // Filler: that slot's value
};

struct IterationRecord {
    int index = 0;
    int deadline = 0;
    Rat block_mass;                                 // original Y_i
    std::optional<std::pair<Rat, int>> proxy_in;    // (value, slot)
    std::optional<std::pair<Rat, int>> proxy_out;
    std::vector<int> fully_opened;                  // opened integrally this iteration
    std::optional<int> merge_topped;                // half slot filled to 1 by the proxy
    std::optional<int> frac_slot;
    Rat frac_value;                                 // merged remainder value
    SlotClass frac_class = SlotClass::Closed;
    bool closed_frac = false;
    std::optional<ChargeRecord> charge;
    std::set<int> opened_cum;
    Rat mass_cum; // sum of original block masses up to this iteration
};

struct RoundingState {
    std::set<int> opened;
    std::vector<ChargeRecord> ledger;        // final charges, one per barely/half opening
    std::vector<IterationRecord> iterations; // trace + invariant evidence
};

// Deadline-by-deadline rounding of a right-shifted fractional solution. Asserts after
// every iteration that jobs due so far fit in the opened slots and that the opened
// count stays within twice the processed mass; throws InvariantViolation otherwise.
RoundingState round_active(const ActiveInstance& inst, const FractionalSolution& shifted);

struct ActiveSchedule {
    std::set<int> active_slots;
    std::map<std::string, std::vector<int>> assignment;
    int cost() const { return static_cast<int>(active_slots.size()); }

    std::map<int, int> load() const {
        std::map<int, int> l;
        for (int t : active_slots) l[t] = 0;
        for (const auto& [id, slots] : assignment) {
            (void)id;
            for (int t : slots) ++l[t];
        }
        return l;
    }
    // slots carrying exactly g units / fewer than g units
    std::set<int> full_slots(int g) const {
        std::set<int> out;
        for (const auto& [t, c] : load())
            if (c == g) out.insert(t);
        return out;
    }
    std::set<int> non_full_slots(int g) const {
        std::set<int> out;
        for (const auto& [t, c] : load())
            if (c < g) out.insert(t);
        return out;
    }
};

struct LpRoundResult {
    FractionalSolution lp;
    FractionalSolution shifted;
    RoundingState rounding;
    ActiveSchedule schedule;
};

// solve -> right_shift -> round -> extract witness assignment.
LpRoundResult lp_round(const ActiveInstance& inst);

struct CloseOrder {
    enum class Policy { LatestFirst, EarliestFirst, SeededRandom, Explicit };
    Policy policy = Policy::LatestFirst;
    std::uint64_t seed = 0;
    std::vector<int> order; // Explicit: slots to try first, rest appended ascending
};

// Start from all slots active, try closing slots one at a time in the given order,
// keep a closure whenever the rest stays feasible. The result is 1-minimal.
ActiveSchedule minimal_feasible(const ActiveInstance& inst, const CloseOrder& order = {});

// Simple counting validator for a claimed schedule; returns an explanation of the
// first violated requirement, or nullopt if the schedule is valid. Deliberately
// avoids the flow machinery.
std::optional<std::string> validate_active_schedule(const ActiveInstance& inst,
                                                    const ActiveSchedule& sched);

} // namespace chronoshed
