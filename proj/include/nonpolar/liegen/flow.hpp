#pragma once

#include <map>
#include <string>

#include "nonpolar/liegen/generator.hpp"

namespace nonpolar::liegen {

/// Value of the group parameter: a itself plus e^a and e^-a, each as an
/// expression so that flows can be composed (e^(a+b) = e^a e^b).
struct FlowParameter {
  Expr a;
  Expr exp_pos;
  Expr exp_neg;

  FlowParameter operator-() const { return {-a, exp_neg, exp_pos}; }
  FlowParameter operator+(const FlowParameter& o) const {
    return {a + o.a, exp_pos * o.exp_pos, exp_neg * o.exp_neg};
  }
};

/// Parameter built from the registry's flow symbols (slot 0: a, slot 1: b).
FlowParameter symbolic_parameter(const JetRegistry& r, int slot = 0);

/// Closed-form one-parameter flow on every coordinate of the extended
/// space: base coordinates, jets of order 1 and 2, and Pi^ij_kl.
class FiniteTransformation {
 public:
  const std::string& generator() const { return generator_; }
  const FlowParameter& parameter() const { return parameter_; }
  const std::map<Atom, Expr>& images() const { return images_; }
  const Expr& image(const Atom& coordinate) const { return images_.at(coordinate); }

 private:
  friend FiniteTransformation exponentiate(const std::string& name, const JetRegistry& r,
                                           const FlowParameter& parameter);
  std::string generator_;
  FlowParameter parameter_;
  std::map<Atom, Expr> images_;
};

/// Names with a closed-form flow: X0, X<i>, S, Y<i>, T, Z1, Z2. Anything
/// else throws NoClosedFormError. The images of Pi^ij_kl follow from the
/// Pi and grad u images by the chain rule.
FiniteTransformation exponentiate(const std::string& name, const JetRegistry& r,
                                  const FlowParameter& parameter);

/// Cancels e^a e^-a pairs of every flow slot.
Expr reduce_exponentials(const Expr& e, const JetRegistry& r);

/// e evaluated at the transformed point: every coordinate replaced by its
/// image.
Expr pull_back(const Expr& e, const FiniteTransformation& f, const JetRegistry& r);

}  // namespace nonpolar::liegen
