#include "pfcell/sets.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace pfcell {

BodyNode BodyNode::whole() { return BodyNode{}; }

BodyNode BodyNode::atom_ref(std::size_t index) {
    BodyNode n;
    n.kind = Kind::Atom;
    n.atom = index;
    return n;
}

BodyNode BodyNode::make_and(std::vector<BodyNode> cs) {
    BodyNode n;
    n.kind = Kind::And;
    n.children = std::move(cs);
    return n;
}

BodyNode BodyNode::make_or(std::vector<BodyNode> cs) {
    BodyNode n;
    n.kind = Kind::Or;
    n.children = std::move(cs);
    return n;
}

BodyNode BodyNode::make_not(BodyNode c) {
    BodyNode n;
    n.kind = Kind::Not;
    n.children.push_back(std::move(c));
    return n;
}

SemiPfaffianSet::SemiPfaffianSet(ChainPtr chain, std::size_t ambient_dim)
    : chain_(std::move(chain)), ambient_dim_(ambient_dim), body_(BodyNode::whole()) {}

SemiPfaffianSet SemiPfaffianSet::whole_box(ChainPtr chain, std::size_t ambient_dim) {
    return SemiPfaffianSet(std::move(chain), ambient_dim);
}

SemiPfaffianSet SemiPfaffianSet::basic(ChainPtr chain, std::size_t ambient_dim,
                                       const BasicSet& b) {
    SemiPfaffianSet s(std::move(chain), ambient_dim);
    std::vector<BodyNode> parts;
    for (const auto& h : b.eqs) parts.push_back(BodyNode::atom_ref(s.add_atom(h, Rel::EqZero)));
    for (const auto& g : b.positives)
        parts.push_back(BodyNode::atom_ref(s.add_atom(g, Rel::GtZero)));
    if (parts.empty()) s.set_body(BodyNode::whole());
    else if (parts.size() == 1) s.set_body(parts[0]);
    else s.set_body(BodyNode::make_and(std::move(parts)));
    return s;
}

std::size_t SemiPfaffianSet::add_atom(const PfaffPoly& f, Rel rel) {
    if (f.space_dim() != ambient_dim_)
        throw std::invalid_argument("add_atom: polynomial space mismatch");
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        if (atoms_[i].rel == rel && atoms_[i].f == f) return i;
    atoms_.push_back(SignCondition{f, rel});
    return atoms_.size() - 1;
}

void SemiPfaffianSet::set_body(BodyNode body) { body_ = std::move(body); }

unsigned SemiPfaffianSet::degree() const {
    unsigned total = 0;
    std::vector<const Poly*> seen;
    for (const auto& a : atoms_) {
        bool dup = false;
        for (const Poly* p : seen)
            if (*p == a.f.poly()) {
                dup = true;
                break;
            }
        if (dup) continue;
        seen.push_back(&a.f.poly());
        total += a.f.degree();
    }
    return total;
}

Cert eval_body(const BodyNode& node, const std::vector<Cert>& atom_values) {
    switch (node.kind) {
        case BodyNode::Kind::True:
            return Cert::True;
        case BodyNode::Kind::Atom:
            return atom_values.at(node.atom);
        case BodyNode::Kind::Not: {
            Cert c = eval_body(node.children.at(0), atom_values);
            if (c == Cert::Unresolved) return c;
            return c == Cert::True ? Cert::False : Cert::True;
        }
        case BodyNode::Kind::And: {
            bool unresolved = false;
            for (const auto& ch : node.children) {
                Cert c = eval_body(ch, atom_values);
                if (c == Cert::False) return Cert::False;
                if (c == Cert::Unresolved) unresolved = true;
            }
            return unresolved ? Cert::Unresolved : Cert::True;
        }
        case BodyNode::Kind::Or: {
            bool unresolved = false;
            for (const auto& ch : node.children) {
                Cert c = eval_body(ch, atom_values);
                if (c == Cert::True) return Cert::True;
                if (c == Cert::Unresolved) unresolved = true;
            }
            return unresolved ? Cert::Unresolved : Cert::False;
        }
    }
    return Cert::Unresolved;
}

Cert SemiPfaffianSet::member(const std::vector<Rat>& point, const PrecisionPolicy& policy) const {
    if (point.size() != ambient_dim_)
        throw std::invalid_argument("member: point arity mismatch");
    std::vector<Cert> vals;
    vals.reserve(atoms_.size());
    for (const auto& a : atoms_) {
        Sign s = a.f.sign_at(point, policy);
        if (s == Sign::Unresolved) {
            vals.push_back(Cert::Unresolved);
        } else if (a.rel == Rel::EqZero) {
            vals.push_back(cert_of(s == Sign::Zero));
        } else {
            vals.push_back(cert_of(s == Sign::Positive));
        }
    }
    return eval_body(body_, vals);
}

namespace {

struct Lit {
    std::size_t atom;
    bool positive;
};

// DNF over literals by structural recursion with a size cap.
void dnf_rec(const BodyNode& node, bool negate, std::vector<std::vector<Lit>>& out,
             std::size_t cap) {
    switch (node.kind) {
        case BodyNode::Kind::True:
            if (negate) out.clear();          // empty disjunction = false
            else out.push_back({});           // single empty conjunct = true
            return;
        case BodyNode::Kind::Atom:
            out.push_back({Lit{node.atom, !negate}});
            return;
        case BodyNode::Kind::Not:
            dnf_rec(node.children.at(0), !negate, out, cap);
            return;
        case BodyNode::Kind::And:
        case BodyNode::Kind::Or: {
            bool distribute = (node.kind == BodyNode::Kind::And) != negate;
            if (!distribute) {
                for (const auto& ch : node.children) {
                    std::vector<std::vector<Lit>> sub;
                    dnf_rec(ch, negate, sub, cap);
                    for (auto& s : sub) out.push_back(std::move(s));
                    if (out.size() > cap) throw std::runtime_error("dnf: blowup cap exceeded");
                }
            } else {
                std::vector<std::vector<Lit>> acc{{}};
                for (const auto& ch : node.children) {
                    std::vector<std::vector<Lit>> sub;
                    dnf_rec(ch, negate, sub, cap);
                    std::vector<std::vector<Lit>> next;
                    for (const auto& a : acc)
                        for (const auto& s : sub) {
                            auto merged = a;
                            merged.insert(merged.end(), s.begin(), s.end());
                            next.push_back(std::move(merged));
                            if (next.size() > cap)
                                throw std::runtime_error("dnf: blowup cap exceeded");
                        }
                    acc = std::move(next);
                }
                for (auto& a : acc) out.push_back(std::move(a));
            }
            return;
        }
    }
}

}  // namespace

std::vector<BasicSet> SemiPfaffianSet::dnf_basics(std::size_t cap) const {
    std::vector<std::vector<Lit>> clauses;
    dnf_rec(body_, false, clauses, cap);
    std::vector<BasicSet> out;
    for (const auto& clause : clauses) {
        // Negated literals split: not(f=0) -> f>0 or -f>0; not(f>0) -> f=0 or -f>0.
        std::vector<BasicSet> partial{BasicSet{}};
        for (const auto& lit : clause) {
            const auto& atom = atoms_.at(lit.atom);
            if (lit.positive) {
                for (auto& b : partial) {
                    if (atom.rel == Rel::EqZero) b.eqs.push_back(atom.f);
                    else b.positives.push_back(atom.f);
                }
            } else {
                std::vector<BasicSet> split;
                for (const auto& b : partial) {
                    BasicSet b1 = b, b2 = b;
                    if (atom.rel == Rel::EqZero) {
                        b1.positives.push_back(atom.f);
                        b2.positives.push_back(-atom.f);
                    } else {
                        b1.eqs.push_back(atom.f);
                        b2.positives.push_back(-atom.f);
                    }
                    split.push_back(std::move(b1));
                    split.push_back(std::move(b2));
                    if (split.size() + out.size() > cap)
                        throw std::runtime_error("dnf: blowup cap exceeded");
                }
                partial = std::move(split);
            }
        }
        for (auto& b : partial) out.push_back(std::move(b));
        if (out.size() > cap) throw std::runtime_error("dnf: blowup cap exceeded");
    }
    return out;
}

SemiPfaffianSet SemiPfaffianSet::padded(std::size_t new_dim) const {
    if (new_dim < ambient_dim_) throw std::invalid_argument("padded: cannot shrink");
    if (new_dim == ambient_dim_) return *this;
    SemiPfaffianSet s(chain_, new_dim);
    for (const auto& a : atoms_) s.atoms_.push_back(SignCondition{a.f.with_space_dim(new_dim), a.rel});
    s.body_ = body_;
    return s;
}

bool SemiPfaffianSet::uses_chain() const {
    for (const auto& a : atoms_)
        if (a.f.uses_chain()) return true;
    return false;
}

namespace {
void body_str(const BodyNode& n, const SemiPfaffianSet& s, std::ostringstream& os) {
    switch (n.kind) {
        case BodyNode::Kind::True: os << "true"; return;
        case BodyNode::Kind::Atom:
            os << "(" << s.atoms().at(n.atom).f.str()
               << (s.atoms().at(n.atom).rel == Rel::EqZero ? " = 0" : " > 0") << ")";
            return;
        case BodyNode::Kind::Not:
            os << "not ";
            body_str(n.children[0], s, os);
            return;
        case BodyNode::Kind::And:
        case BodyNode::Kind::Or: {
            os << "(";
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                if (i) os << (n.kind == BodyNode::Kind::And ? " and " : " or ");
                body_str(n.children[i], s, os);
            }
            os << ")";
            return;
        }
    }
}
}  // namespace

std::string SemiPfaffianSet::str() const {
    std::ostringstream os;
    os << "{ I^" << ambient_dim_ << " : ";
    body_str(body_, *this, os);
    os << " }";
    return os.str();
}

SubPfaffianPresentation::SubPfaffianPresentation(std::size_t target_dim,
                                                 std::vector<ProjectionTerm> terms,
                                                 std::string provenance)
    : target_dim_(target_dim), terms_(std::move(terms)) {
    for (const auto& t : terms_) {
        if (t.target_dim != target_dim_)
            throw std::invalid_argument("presentation: term target mismatch");
        if (t.source.ambient_dim() < target_dim_)
            throw std::invalid_argument("presentation: source below target dimension");
        if (t.witness && t.witness->point.size() != t.source.ambient_dim())
            throw std::invalid_argument("presentation: witness arity mismatch");
    }
    ledger_.star_format = star_format();
    ledger_.star_degree = star_degree();
    ledger_.provenance = std::move(provenance);
}

std::size_t SubPfaffianPresentation::star_format() const {
    std::size_t f = terms_.empty() ? target_dim_ : 0;
    for (const auto& t : terms_) f = std::max(f, t.source.format());
    return f;
}

unsigned SubPfaffianPresentation::star_degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) d += t.source.degree();
    return d;
}

SubPfaffianPresentation SubPfaffianPresentation::empty(std::size_t target_dim) {
    return SubPfaffianPresentation(target_dim, {}, "empty");
}

SubPfaffianPresentation SubPfaffianPresentation::of_set(const SemiPfaffianSet& set,
                                                        std::size_t target_dim) {
    ProjectionTerm t{set, std::nullopt, target_dim};
    return SubPfaffianPresentation(target_dim, {std::move(t)});
}

SubPfaffianPresentation SubPfaffianPresentation::unite(const SubPfaffianPresentation& a,
                                                       const SubPfaffianPresentation& b) {
    if (a.target_dim() != b.target_dim())
        throw std::invalid_argument("unite: target dimension mismatch");
    auto terms = a.terms();
    terms.insert(terms.end(), b.terms().begin(), b.terms().end());
    return SubPfaffianPresentation(a.target_dim(), std::move(terms), "union");
}

}  // namespace pfcell
