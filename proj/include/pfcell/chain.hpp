#ifndef PFCELL_CHAIN_HPP
#define PFCELL_CHAIN_HPP

#include <memory>
#include <string>
#include <vector>

#include "pfcell/interval.hpp"
#include "pfcell/poly.hpp"

namespace pfcell {

class PfaffianChain;

// Certified numeric evaluator for one chain function: returns an enclosure
// of u_i(x) at a rational point, tightened toward target_width when it can.
class ChainEvaluator {
  public:
    virtual ~ChainEvaluator() = default;
    virtual Interval eval(const std::vector<Rat>& x, const Rat& target_width) const = 0;
    virtual std::string tag() const = 0;
};

// Triangular chain of derivations: d u_i / d x_j = P[i][j](x, u_1..u_i).
// Fixed once per session; every symbolic object references one chain.
class PfaffianChain {
  public:
    // chain_polys[i][j] over (ambient_dim + length) slots: box variables
    // first, then chain symbols. Triangularity is checked.
    PfaffianChain(std::size_t ambient_dim, std::vector<std::vector<Poly>> chain_polys,
                  Box domain, std::vector<std::shared_ptr<const ChainEvaluator>> evaluators);

    static std::shared_ptr<const PfaffianChain> empty(std::size_t ambient_dim);

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t length() const { return polys_.size(); }
    const Poly& derivation(std::size_t chain_index, std::size_t axis) const;
    unsigned chain_degree(std::size_t chain_index) const { return degrees_[chain_index]; }
    unsigned max_chain_degree() const;
    const Box& domain() const { return domain_; }
    const ChainEvaluator& evaluator(std::size_t chain_index) const;

    // Enclosures of u_1..u_length at a rational point of the domain.
    std::vector<Interval> eval_symbols(const std::vector<Rat>& x, const Rat& target_width) const;

  private:
    std::size_t ambient_dim_;
    std::vector<std::vector<Poly>> polys_;
    std::vector<unsigned> degrees_;
    Box domain_;
    std::vector<std::shared_ptr<const ChainEvaluator>> evaluators_;
};

using ChainPtr = std::shared_ptr<const PfaffianChain>;

// u = exp(x_axis); validated by Taylor series with explicit tail bound.
class ExpEvaluator final : public ChainEvaluator {
  public:
    explicit ExpEvaluator(std::size_t axis) : axis_(axis) {}
    Interval eval(const std::vector<Rat>& x, const Rat& target_width) const override;
    std::string tag() const override { return "exp:" + std::to_string(axis_); }

  private:
    std::size_t axis_;
};

// Validated Taylor integrator for a chain of length <= 2 whose functions
// depend on one box variable: du_i/dt = P_i(t, u_1..u_i), u_i(0) given.
// Integration runs along the axis from 0 with stepwise Picard enclosures.
class SeriesODEEvaluator final : public ChainEvaluator {
  public:
    SeriesODEEvaluator(std::size_t axis, std::size_t index, std::vector<Poly> rhs,
                       std::vector<Rat> initial_values);
    Interval eval(const std::vector<Rat>& x, const Rat& target_width) const override;
    std::string tag() const override;

  private:
    std::size_t axis_;
    std::size_t index_;              // which component this evaluator reports
    std::vector<Poly> rhs_;          // over slots (t, u_1..u_r), r = rhs_.size()
    std::vector<Rat> initial_;
};

std::shared_ptr<const ChainEvaluator> make_evaluator_from_tag(
    const std::string& tag, std::size_t chain_index, std::size_t ambient_dim,
    const std::vector<std::vector<Poly>>& chain_polys, const std::vector<Rat>& initial_values);

}  // namespace pfcell

#endif
