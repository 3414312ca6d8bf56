#ifndef PFCELL_SETS_HPP
#define PFCELL_SETS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "pfcell/pfaff.hpp"

namespace pfcell {

enum class Rel : std::uint8_t { EqZero, GtZero };

struct SignCondition {
    PfaffPoly f;
    Rel rel;
};

// Three-valued certified outcome.
enum class Cert : std::uint8_t { False, True, Unresolved };

inline Cert cert_of(bool b) { return b ? Cert::True : Cert::False; }

// Boolean combination tree over atom indices of the owning set.
struct BodyNode {
    enum class Kind : std::uint8_t { True, Atom, And, Or, Not };
    Kind kind = Kind::True;
    std::size_t atom = 0;
    std::vector<BodyNode> children;

    static BodyNode whole();
    static BodyNode atom_ref(std::size_t index);
    static BodyNode make_and(std::vector<BodyNode> cs);
    static BodyNode make_or(std::vector<BodyNode> cs);
    static BodyNode make_not(BodyNode c);
};

// Conjunction of equations and strict inequalities; the solver- and
// kernel-facing normal form.
struct BasicSet {
    std::vector<PfaffPoly> eqs;        // h = 0
    std::vector<PfaffPoly> positives;  // g > 0
};

// Quantifier-free semi-Pfaffian subset of the unit box in `ambient_dim`
// variables. Atoms are deduplicated by polynomial; degree sums each distinct
// polynomial's degree once.
class SemiPfaffianSet {
  public:
    SemiPfaffianSet(ChainPtr chain, std::size_t ambient_dim);

    static SemiPfaffianSet whole_box(ChainPtr chain, std::size_t ambient_dim);
    // Conjunction of the given conditions.
    static SemiPfaffianSet basic(ChainPtr chain, std::size_t ambient_dim, const BasicSet& b);

    const ChainPtr& chain() const { return chain_; }
    std::size_t ambient_dim() const { return ambient_dim_; }
    const std::vector<SignCondition>& atoms() const { return atoms_; }
    const BodyNode& body() const { return body_; }

    // Adds (dedups) an atom and returns its index.
    std::size_t add_atom(const PfaffPoly& f, Rel rel);
    void set_body(BodyNode body);

    // format = ambient dimension.
    std::size_t format() const { return ambient_dim_; }
    // degree = sum of degrees of the distinct polynomials in the atoms.
    unsigned degree() const;

    Cert member(const std::vector<Rat>& point, const PrecisionPolicy& policy = {}) const;

    // Disjunctive normal form as basic sets. Throws on blowup past `cap`.
    std::vector<BasicSet> dnf_basics(std::size_t cap = 4096) const;

    // Same set with trailing box variables appended (projection-preserving
    // padding).
    SemiPfaffianSet padded(std::size_t new_dim) const;

    bool uses_chain() const;

    std::string str() const;

  private:
    ChainPtr chain_;
    std::size_t ambient_dim_;
    std::vector<SignCondition> atoms_;
    BodyNode body_;
};

Cert eval_body(const BodyNode& node, const std::vector<Cert>& atom_values);

// Complexity ledger carried by presentations and cells.
struct ComplexityLedger {
    std::size_t star_format = 0;
    unsigned star_degree = 0;
    std::string provenance;
};

struct ComponentWitness {
    std::vector<Rat> point;
    bool certified = false;
    // Optional isolating box pinning the designated component when the
    // witness point itself cannot lie exactly on the set.
    std::optional<Box> anchor_box;
};

struct ProjectionTerm {
    SemiPfaffianSet source;
    std::optional<ComponentWitness> witness;  // absent: project the whole set
    std::size_t target_dim = 0;
};

// Union of projections of designated components: the presentation form of a
// sub-Pfaffian set.
class SubPfaffianPresentation {
  public:
    SubPfaffianPresentation(std::size_t target_dim, std::vector<ProjectionTerm> terms,
                            std::string provenance = {});

    std::size_t target_dim() const { return target_dim_; }
    const std::vector<ProjectionTerm>& terms() const { return terms_; }
    const ComplexityLedger& ledger() const { return ledger_; }

    std::size_t star_format() const;
    unsigned star_degree() const;

    static SubPfaffianPresentation empty(std::size_t target_dim);
    // Whole-set projection of a single semi-Pfaffian set.
    static SubPfaffianPresentation of_set(const SemiPfaffianSet& set, std::size_t target_dim);

    // Union: term concatenation (degree adds, format maxes).
    static SubPfaffianPresentation unite(const SubPfaffianPresentation& a,
                                         const SubPfaffianPresentation& b);

  private:
    std::size_t target_dim_;
    std::vector<ProjectionTerm> terms_;
    ComplexityLedger ledger_;
};

}  // namespace pfcell

#endif
