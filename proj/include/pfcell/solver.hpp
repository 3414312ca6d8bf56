#ifndef PFCELL_SOLVER_HPP
#define PFCELL_SOLVER_HPP

#include <memory>
#include <optional>

#include "pfcell/sets.hpp"

namespace pfcell {

// A conjunctive system restricted to the fiber over a fixed rational prefix:
// the first prefix.size() coordinates are pinned, the remaining
// (space_dim - prefix) coordinates range over a box.
struct FiberSystem {
    std::vector<PfaffPoly> eqs;
    std::vector<PfaffPoly> positives;
    std::vector<Rat> prefix;

    std::size_t space_dim() const;
    std::size_t free_dims() const { return space_dim() - prefix.size(); }
    bool chain_free() const;

    static FiberSystem of_basic(const BasicSet& b, std::vector<Rat> prefix);
};

struct SolverOptions {
    int max_depth = 40;              // subdivision depth
    std::size_t max_boxes = 200000;  // total boxes processed
    Rat certify_width = Rat(1, 1 << 10);  // attempt certification below this width
    PrecisionPolicy precision;
};

// An isolated solution of the equation part, certified by a Krawczyk
// contraction of a square subsystem on `box` (fiber coordinates only).
struct CertifiedPoint {
    Box box;                          // contains exactly one subsystem root
    std::vector<std::size_t> eq_subset;  // rows of the certified square system
    std::shared_ptr<const FiberSystem> system;

    std::vector<Rat> full_point_mid() const;  // prefix + fiber midpoints
    // Shrinks the box toward the root; width roughly squares per step.
    bool refine();
    void refine_below(const Rat& width, int max_rounds = 64);
};

struct NonemptyResult {
    Cert outcome = Cert::Unresolved;
    // For True outcomes: either an exact rational witness (open parts) or a
    // certified point (equational parts).
    std::optional<std::vector<Rat>> rational_witness;
    std::optional<CertifiedPoint> certified_witness;
};

// Decides whether the fiber set is nonempty over the given fiber box
// (defaults to the unit box). Only certified answers are returned as
// True/False; everything else is Unresolved.
NonemptyResult decide_nonempty(const FiberSystem& system, const SolverOptions& opts = {},
                               std::optional<Box> fiber_box = std::nullopt);

// Enumerates the solutions of a zero-dimensional equation system (with side
// constraints) over the fiber box. Throws std::runtime_error on resource
// exhaustion and SolverUnresolved when certification fails somewhere.
struct SolverUnresolved : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<CertifiedPoint> solve_points(const FiberSystem& system, const SolverOptions& opts = {},
                                         std::optional<Box> fiber_box = std::nullopt);

// Certified sign of a PfaffPoly at a certified point (exact where possible,
// interval refinement otherwise).
Sign sign_at_certified(const PfaffPoly& f, CertifiedPoint& p, const PrecisionPolicy& policy = {});

// Membership of a basic set at a certified point.
Cert member_at_certified(const BasicSet& basic, CertifiedPoint& p,
                         const PrecisionPolicy& policy = {});

}  // namespace pfcell

#endif
