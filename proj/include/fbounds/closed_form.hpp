#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "fbounds/bounds.hpp"
#include "fbounds/model.hpp"

namespace fbounds {

// Closed-form sharp bounds for the four analytic regimes: factorial-only or
// factorial+observational data, each with or without joint monotonicity.
//
// Every bound is a max (lower) or min (upper) over affine expressions in
// named probabilities, stored as data so each expression can be audited
// term by term. Each term carries its provenance:
//   stated    - transcribed expression, verified against the LP oracle;
//   resolved  - transcribed expression with a typo fixed; the fix is the
//               unique small edit that survives the LP cross-check;
//   oracle    - completion term recovered as an optimal dual vertex of the
//               strata LP (rounded to exact rationals and re-verified
//               dual-feasible), added where the stated list alone is not
//               sharp. Dual feasibility makes every such term a valid bound
//               for any consistent data, independent of the instance it was
//               harvested from.
enum class TermSource { stated, resolved, oracle };

struct BoundTerm {
  enum class Atom { fact, obs_joint, obs_ay, obs_by, obs_ab, obs_a, obs_b, obs_y };
  struct Weighted {
    double coeff;
    Atom atom;
    int a, b, y;
  };

  TermSource source = TermSource::stated;
  double constant = 0.0;
  std::vector<Weighted> parts;

  bool needs_observational() const {
    for (const auto& w : parts)
      if (w.atom != Atom::fact) return true;
    return false;
  }

  double eval(const FactorialDist& fact, const ObservationalDist* obs) const {
    double v = constant;
    for (const auto& w : parts) {
      double x = 0.0;
      switch (w.atom) {
        case Atom::fact: x = fact.prob(w.a, w.b, w.y); break;
        case Atom::obs_joint: x = obs->prob(w.a, w.b, w.y); break;
        case Atom::obs_ay: x = obs->marginal_ay(w.a, w.y); break;
        case Atom::obs_by: x = obs->marginal_by(w.b, w.y); break;
        case Atom::obs_ab: x = obs->marginal_ab(w.a, w.b); break;
        case Atom::obs_a: x = obs->marginal_a(w.a); break;
        case Atom::obs_b: x = obs->marginal_b(w.b); break;
        case Atom::obs_y: x = obs->marginal_y(w.y); break;
      }
      v += w.coeff * x;
    }
    return v;
  }
};

struct ClosedFormList {
  std::vector<BoundTerm> terms;

  double max_over(const FactorialDist& fact, const ObservationalDist* obs) const {
    double best = -kLpInf;
    for (const auto& t : terms) best = std::max(best, t.eval(fact, obs));
    return best;
  }
  double min_over(const FactorialDist& fact, const ObservationalDist* obs) const {
    double best = kLpInf;
    for (const auto& t : terms) best = std::min(best, t.eval(fact, obs));
    return best;
  }
};

struct ClosedFormPair {
  ClosedFormList lower, upper;
};

namespace detail {

using Src = TermSource;

// Fluent construction of one affine term.
struct TermBuilder {
  BoundTerm t;
  explicit TermBuilder(Src src) { t.source = src; }
  TermBuilder& c(double v) {
    t.constant = v;
    return *this;
  }
  TermBuilder& fact(int a, int b, int y, double k = 1.0) {
    t.parts.push_back({k, BoundTerm::Atom::fact, a, b, y});
    return *this;
  }
  TermBuilder& obs(int a, int b, int y, double k = 1.0) {
    t.parts.push_back({k, BoundTerm::Atom::obs_joint, a, b, y});
    return *this;
  }
  TermBuilder& obs_ay(int a, int y, double k = 1.0) {
    t.parts.push_back({k, BoundTerm::Atom::obs_ay, a, -1, y});
    return *this;
  }
  TermBuilder& obs_by(int b, int y, double k = 1.0) {
    t.parts.push_back({k, BoundTerm::Atom::obs_by, -1, b, y});
    return *this;
  }
  TermBuilder& obs_ab(int a, int b, double k = 1.0) {
    t.parts.push_back({k, BoundTerm::Atom::obs_ab, a, b, -1});
    return *this;
  }
  TermBuilder& obs_a(int a, double k = 1.0) {
    t.parts.push_back({k, BoundTerm::Atom::obs_a, a, -1, -1});
    return *this;
  }
  TermBuilder& obs_b(int b, double k = 1.0) {
    t.parts.push_back({k, BoundTerm::Atom::obs_b, -1, b, -1});
    return *this;
  }
  TermBuilder& obs_y(int y, double k = 1.0) {
    t.parts.push_back({k, BoundTerm::Atom::obs_y, -1, -1, y});
    return *this;
  }
  operator BoundTerm() const { return t; }
};

inline TermBuilder term(Src src) { return TermBuilder(src); }

// --------------------------------------------------------------------------
// Factorial-only, no assumptions.
// --------------------------------------------------------------------------

// max{0, r(a,b0,1)+r(a,b1,1)-1} <= E[Y_a] <= min{r(a,b0,1)+r(a,b1,1), 1}
inline ClosedFormPair fact_only_ey(int a) {
  ClosedFormPair p;
  p.lower.terms = {
      term(Src::stated),
      term(Src::stated).c(-1).fact(a, 0, 1).fact(a, 1, 1),
  };
  p.upper.terms = {
      term(Src::stated).c(1),
      term(Src::stated).fact(a, 0, 1).fact(a, 1, 1),
  };
  return p;
}

// The stated four-term ATE lists plus the two cross-arm completions per
// side; the second stated lower term uses the sum form, the only variant
// that survives the LP cross-check.
inline ClosedFormPair fact_only_ate() {
  ClosedFormPair p;
  p.lower.terms = {
      term(Src::stated).c(-1),
      term(Src::resolved).fact(0, 0, 1, -1).fact(0, 1, 1, -1),
      term(Src::stated).c(-2).fact(1, 0, 1).fact(1, 1, 1),
      term(Src::stated).c(-1).fact(1, 0, 1).fact(1, 1, 1).fact(0, 0, 1, -1).fact(0, 1, 1, -1),
      term(Src::oracle).c(-1).fact(1, 0, 1).fact(0, 1, 1, -1),
      term(Src::oracle).c(-1).fact(1, 1, 1).fact(0, 0, 1, -1),
  };
  p.upper.terms = {
      term(Src::stated).c(1),
      term(Src::stated).c(2).fact(0, 0, 1, -1).fact(0, 1, 1, -1),
      term(Src::stated).fact(1, 0, 1).fact(1, 1, 1),
      term(Src::stated).c(1).fact(1, 0, 1).fact(1, 1, 1).fact(0, 0, 1, -1).fact(0, 1, 1, -1),
      term(Src::oracle).c(1).fact(1, 0, 1).fact(0, 1, 1, -1),
      term(Src::oracle).c(1).fact(1, 1, 1).fact(0, 0, 1, -1),
  };
  return p;
}

// --------------------------------------------------------------------------
// Factorial + observational, no assumptions.
// --------------------------------------------------------------------------

// Generic-a lists instantiated at both levels of b (the expressions are
// stated for a free b, so both instantiations are valid and the pair is
// jointly sharp). The fourth lower expression carries a flipped outcome
// level in its first factor as printed; the resolved form restores the
// complement-duality with the corresponding upper expression.
inline ClosedFormPair both_ey(int a) {
  const int ap = 1 - a;
  ClosedFormPair p;
  p.lower.terms = {term(Src::stated), term(Src::stated).obs_ay(a, 1)};
  p.upper.terms = {term(Src::stated).c(1), term(Src::stated).c(1).obs_ay(a, 0, -1)};
  for (int b = 0; b < 2; ++b) {
    const int bp = 1 - b;
    p.lower.terms.push_back(
        term(Src::stated).fact(a, bp, 1).obs_ab(ap, b, -1).obs(a, b, 0, -1));
    p.lower.terms.push_back(
        term(Src::resolved).fact(a, b, 1).obs_by(bp, 0, -1).obs(ap, bp, 1, -1));
    p.lower.terms.push_back(term(Src::stated).fact(a, bp, 1).fact(a, b, 0, -1));
    p.upper.terms.push_back(
        term(Src::stated).obs(ap, b, 0).obs_by(b, 1).fact(a, bp, 1));
    p.upper.terms.push_back(term(Src::stated).fact(a, bp, 1).fact(a, b, 1));
    p.upper.terms.push_back(
        term(Src::stated).obs_ab(ap, bp).obs(a, bp, 1).fact(a, b, 1));
  }
  return p;
}

inline ClosedFormPair both_ate() {
  ClosedFormPair p;
  p.lower.terms = {
      term(Src::stated).obs_ay(1, 0, -1).obs_ay(0, 1, -1),
      term(Src::stated).obs_ay(1, 1).fact(0, 0, 1, -1).fact(0, 1, 1, -1),
      term(Src::stated).obs_ab(1, 1).obs_ay(1, 0, -1).obs(0, 0, 1, -1).fact(0, 1, 1, -1),
      term(Src::stated).obs_ab(1, 0).obs_ay(1, 0, -1).obs(0, 1, 1, -1).fact(0, 0, 1, -1),
      term(Src::stated).obs_ay(0, 0).fact(1, 0, 0, -1).fact(1, 1, 0, -1),
      term(Src::stated).fact(1, 0, 1).fact(1, 1, 0, -1).fact(0, 0, 1, -1).fact(0, 1, 1, -1),
      term(Src::stated)
          .fact(1, 0, 1)
          .fact(1, 1, 0, -1)
          .fact(0, 1, 1, -1)
          .obs(0, 0, 1, -1)
          .obs_ab(1, 0, -1),
      term(Src::stated)
          .fact(1, 0, 1)
          .fact(1, 1, 0, -1)
          .fact(0, 0, 1, -1)
          .obs(0, 1, 1, -1)
          .obs_ab(1, 1, -1),
      term(Src::stated).obs_ab(0, 1).obs(1, 0, 0, -1).obs_ay(0, 1, -1).fact(1, 1, 0, -1),
      term(Src::stated)
          .fact(1, 1, 1)
          .fact(0, 0, 1, -1)
          .fact(0, 1, 1, -1)
          .obs(1, 0, 0, -1)
          .obs_ab(0, 0, -1),
      term(Src::stated)
          .fact(1, 1, 1)
          .fact(0, 1, 1, -1)
          .obs_b(0, -1)
          .obs(1, 0, 0, -1)
          .obs(0, 0, 1, -1),
      term(Src::stated).obs(1, 0, 1).obs(0, 1, 0).fact(1, 1, 0, -1).fact(0, 0, 1, -1),
      term(Src::stated).obs_ab(0, 0).obs(1, 1, 0, -1).obs_ay(0, 1, -1).fact(1, 0, 0, -1),
      term(Src::stated)
          .fact(1, 0, 1)
          .fact(0, 0, 1, -1)
          .fact(0, 1, 1, -1)
          .obs_ab(0, 1, -1)
          .obs(1, 1, 0, -1),
      term(Src::stated).obs(1, 1, 1).obs(0, 0, 0).fact(1, 0, 0, -1).fact(0, 1, 1, -1),
      // As printed the first factor reads E[Y(0,1)]; the mirror of the
      // sharp upper list and the LP both require E[Y(0,0)].
      term(Src::resolved)
          .fact(1, 0, 1)
          .fact(0, 0, 1, -1)
          .obs_ab(0, 1, -1)
          .obs(1, 1, 0, -1)
          .obs(0, 1, 1, -1)
          .obs_ab(1, 1, -1),
  };
  p.upper.terms = {
      term(Src::stated).obs_ay(1, 1).obs_ay(0, 0),
      term(Src::stated).fact(0, 0, 0).fact(0, 1, 0).obs_ay(1, 0, -1),
      term(Src::stated).fact(0, 1, 0).obs(0, 0, 0).obs_ab(1, 0).obs_ay(1, 0, -1),
      term(Src::stated).fact(0, 0, 0).obs(0, 1, 0).obs_ab(1, 1).obs_ay(1, 0, -1),
      term(Src::stated).fact(1, 0, 1).fact(1, 1, 1).obs_ay(0, 1, -1),
      term(Src::stated).fact(1, 0, 1).fact(1, 1, 1).fact(0, 0, 0).fact(0, 1, 1, -1),
      term(Src::stated)
          .fact(1, 0, 1)
          .fact(1, 1, 1)
          .fact(0, 1, 1, -1)
          .obs_by(0, 0)
          .obs(1, 0, 1),
      term(Src::stated)
          .fact(1, 0, 1)
          .fact(1, 1, 1)
          .fact(0, 0, 1, -1)
          .obs_by(1, 0)
          .obs(1, 1, 1),
      term(Src::stated).fact(1, 1, 1).obs(1, 0, 1).obs(0, 0, 0).obs(0, 1, 1, -1),
      term(Src::stated)
          .fact(1, 1, 1)
          .fact(0, 1, 0)
          .fact(0, 0, 1, -1)
          .obs_ab(0, 0)
          .obs(1, 0, 1),
      term(Src::stated)
          .fact(1, 1, 1)
          .fact(0, 1, 1, -1)
          .obs_ab(0, 0)
          .obs_by(0, 0)
          .obs(1, 0, 1, 2),
      term(Src::stated).fact(1, 1, 1).fact(0, 0, 0).obs(1, 0, 0, -1).obs(0, 1, 1, -1),
      term(Src::stated).fact(1, 0, 1).obs_ab(0, 0, -1).obs(1, 1, 1).obs_ay(0, 0),
      term(Src::stated).fact(1, 0, 1).fact(0, 0, 1, -1).fact(0, 1, 0).obs_ab(0, 1).obs(1, 1, 1),
      term(Src::stated).fact(1, 0, 1).fact(0, 1, 1, -1).obs_ab(0, 1).obs_ay(1, 1).obs_by(0, 0),
      term(Src::stated)
          .fact(1, 0, 1)
          .fact(0, 0, 1, -1)
          .obs_ab(0, 1)
          .obs_by(1, 0)
          .obs(1, 1, 1, 2),
  };
  return p;
}

// --------------------------------------------------------------------------
// Factorial-only, joint monotonicity.
// --------------------------------------------------------------------------

// The stated bound keeps only {0, 1, r(a1,b0,1)+r(a1,b1,1)}; monotonicity
// couples the arms, so the oracle completion below is required for
// sharpness (note the half-weight cross-arm vertices).
inline ClosedFormPair mono_fact_ey_a1() {
  ClosedFormPair p;
  p.lower.terms = {
      term(Src::stated),
      term(Src::oracle).c(-0.5).fact(0, 0, 1, 0.5).fact(1, 0, 1, 0.5).fact(1, 1, 1, 0.5),
      term(Src::oracle).c(-1).fact(1, 0, 1).fact(1, 1, 1),
      term(Src::oracle).c(-1).fact(0, 0, 1).fact(1, 1, 1),
      term(Src::oracle).c(-1).fact(0, 1, 1).fact(1, 0, 1),
      term(Src::oracle).c(-0.5).fact(0, 0, 1, 0.5).fact(0, 1, 1, 0.5).fact(1, 0, 1, 0.5),
      term(Src::oracle).c(-1).fact(0, 0, 1).fact(0, 1, 1),
      term(Src::oracle).c(-1).fact(0, 0, 1).fact(1, 0, 1),
  };
  p.upper.terms = {
      term(Src::stated).c(1),
      term(Src::stated).fact(1, 0, 1).fact(1, 1, 1),
      term(Src::oracle).c(1).fact(0, 0, 1, -1).fact(0, 1, 1).fact(1, 1, 1),
  };
  return p;
}

// Monotone ATE from factorial margins alone. The two expressions with
// garbled outcome levels resolve to the corresponding nonparametric
// expressions, the only valid level choices.
inline ClosedFormPair mono_fact_ate() {
  ClosedFormPair p;
  p.lower.terms = {
      term(Src::stated),
      term(Src::stated).fact(0, 0, 0, -1).fact(0, 1, 1, -1).fact(1, 0, 0).fact(1, 1, 0, -1),
      term(Src::stated).fact(0, 0, 1, -1).fact(0, 1, 0, -1).fact(1, 0, 0, -1).fact(1, 1, 0),
      term(Src::resolved).fact(0, 0, 1, -1).fact(0, 1, 1, -1).fact(1, 0, 1).fact(1, 1, 0, -1),
  };
  p.upper.terms = {
      term(Src::stated).c(1),
      term(Src::stated).fact(0, 0, 0).fact(0, 1, 1, -1).fact(1, 0, 1).fact(1, 1, 1),
      term(Src::stated).fact(0, 0, 0).fact(1, 1, 1),
      term(Src::stated).fact(0, 1, 0).fact(1, 0, 1),
      term(Src::stated).fact(1, 0, 1).fact(1, 1, 1),
      term(Src::resolved).fact(0, 0, 0).fact(0, 1, 0),
  };
  return p;
}

// --------------------------------------------------------------------------
// Factorial + observational, joint monotonicity.
// --------------------------------------------------------------------------

inline ClosedFormPair mono_both_ey_a1() {
  ClosedFormPair p;
  p.lower.terms = {
      term(Src::stated),
      term(Src::stated).c(-1).fact(0, 0, 1, -1).fact(0, 1, 1, -1).fact(1, 0, 1).fact(1, 1, 1),
      term(Src::stated).fact(0, 0, 0, -1).fact(0, 1, 1, -1).fact(1, 0, 0).fact(1, 1, 0, -1),
      term(Src::stated).fact(0, 0, 0).fact(0, 1, 0, -1).fact(1, 0, 0, -1).fact(1, 1, 1, -1),
      // Intervening with the treatment on cannot lower a monotone outcome,
      // so the observed outcome rate is itself a floor.
      term(Src::oracle).obs_y(1),
      term(Src::oracle).fact(1, 0, 1).obs(0, 1, 0, -1),
      term(Src::oracle).fact(1, 1, 1).obs(0, 0, 0, -1).obs(1, 0, 0, -1),
      term(Src::oracle).c(-1).fact(1, 0, 1).fact(1, 1, 1).obs(1, 1, 0),
  };
  // Three of the printed upper expressions (factorial-only combinations such
  // as Pr(Y01=0)+Pr(Y10=1)) fail the exact dual-feasibility audit: a
  // one-point stratum model violates each, so they are omitted rather than
  // repaired.
  p.upper.terms = {
      term(Src::stated).c(1),
      term(Src::stated).fact(1, 0, 1).fact(1, 1, 1),
      term(Src::oracle).c(1).obs(1, 0, 0, -1).obs(1, 1, 0, -1),
      term(Src::oracle).fact(1, 0, 1).obs_ab(0, 1).obs(1, 1, 1),
      term(Src::oracle).fact(1, 1, 1).obs_ab(0, 0),
      term(Src::oracle).fact(1, 0, 1).fact(1, 1, 1).obs(1, 0, 1, -1),
  };
  return p;
}

inline ClosedFormPair mono_both_ate() {
  ClosedFormPair p;
  p.lower.terms = {
      term(Src::stated),
      term(Src::stated).obs_by(0, 1).fact(0, 0, 1, -1),
      term(Src::stated).obs_y(1, -1).obs(0, 1, 0, -1).fact(1, 0, 1),
      term(Src::stated).obs_ab(0, 1, -1).obs(1, 1, 1, -1).fact(0, 0, 1, -1).fact(1, 0, 1),
      term(Src::stated).obs(0, 0, 1).obs_by(1, 1).fact(0, 1, 1, -1),
      term(Src::stated).obs_y(1).obs(0, 0, 1).fact(0, 0, 1, -1).fact(0, 1, 1, -1),
      term(Src::stated)
          .obs(0, 0, 1)
          .obs(0, 1, 0, -1)
          .fact(0, 0, 1, -1)
          .fact(0, 1, 1, -1)
          .fact(1, 0, 1),
      term(Src::stated).obs(0, 1, 0, -1).obs(1, 0, 1, -1).fact(0, 1, 1, -1).fact(1, 0, 1),
      term(Src::stated).obs_b(0, -1).obs_by(1, 1, -1).fact(1, 1, 1),
      term(Src::stated).obs_by(1, 1, -1).obs_by(0, 0, -1).fact(0, 0, 1, -1).fact(1, 1, 1),
      term(Src::stated).obs_y(1, -1).obs(1, 1, 0).fact(1, 0, 0, -1).fact(1, 1, 1),
      term(Src::stated)
          .obs_by(1, 1, -1)
          .obs(1, 1, 0)
          .fact(0, 0, 1, -1)
          .fact(1, 0, 0, -1)
          .fact(1, 1, 1),
      term(Src::stated).obs_by(0, 0, -1).obs(1, 0, 1, -1).fact(0, 1, 1, -1).fact(1, 1, 1),
      term(Src::stated)
          .obs_ab(0, 0, -1)
          .obs(1, 0, 0, -1)
          .fact(0, 0, 1, -1)
          .fact(0, 1, 1, -1)
          .fact(1, 1, 1),
      // Printed with one observational cell doubled; the valid vertex pairs
      // the two complementary cells instead.
      term(Src::resolved)
          .obs(0, 0, 1)
          .obs(1, 1, 0)
          .fact(0, 0, 1, -1)
          .fact(0, 1, 1, -1)
          .fact(1, 0, 0, -1)
          .fact(1, 1, 1),
      term(Src::oracle)
          .fact(0, 0, 1, -1)
          .fact(0, 1, 1, -1)
          .fact(1, 1, 1)
          .obs(0, 0, 0, -1)
          .obs(0, 0, 1)
          .obs(1, 0, 0, -1),
      term(Src::stated)
          .obs_a(0, -1)
          .obs_ab(1, 0, -1)
          .obs_ay(1, 1, -1)
          .fact(0, 1, 1, -1)
          .fact(1, 0, 1)
          .fact(1, 1, 1),
  };
  p.upper.terms = {
      term(Src::stated).obs(0, 0, 1, -1).obs(0, 1, 0).obs(1, 1, 1).fact(1, 0, 1),
      term(Src::stated).obs(0, 0, 0).obs(1, 0, 1).obs(1, 1, 0).fact(0, 1, 0),
      term(Src::stated).obs(0, 0, 0).obs_b(0).fact(0, 1, 1, -1).fact(1, 1, 1),
      term(Src::stated).obs_ay(0, 0).obs_ay(1, 1),
      term(Src::stated).obs_ay(0, 0).obs_by(1, 1).obs_ab(1, 0).fact(0, 1, 1, -1).fact(1, 0, 1),
      term(Src::stated).obs_b(1).obs(1, 1, 1).fact(0, 0, 1, -1).fact(1, 0, 1),
      term(Src::stated).obs(0, 1, 0, -1).obs_ay(1, 0, -1).fact(0, 0, 0).fact(0, 1, 0),
      term(Src::stated).obs_by(0, 0).fact(0, 1, 1, -1).fact(1, 0, 1).fact(1, 1, 1),
      term(Src::stated).obs(0, 0, 0).obs(0, 1, 1, -1).fact(1, 1, 1),
      // Printed as cell marginals; the LP requires the outcome-resolved
      // cells.
      term(Src::resolved).c(1).obs(1, 0, 0, -1).obs(1, 1, 1).fact(0, 0, 1, -1),
      term(Src::stated)
          .obs_ab(0, 0)
          .obs(0, 1, 0, -1)
          .fact(0, 0, 0)
          .fact(0, 1, 1, -1)
          .fact(1, 1, 1),
      term(Src::stated).obs_ab(0, 0).obs_ab(1, 1).fact(0, 0, 1, -1).fact(1, 1, 1),
      // Printed with the joint (a1, b1) cell; the LP requires the full
      // b1-margin of the outcome.
      term(Src::resolved).c(1).obs_by(1, 1).fact(0, 0, 1, -1).fact(0, 1, 1, -1).fact(1, 0, 1),
      term(Src::stated).obs_ay(0, 1, -1).obs(1, 0, 1, -1).fact(1, 0, 1).fact(1, 1, 1),
      term(Src::stated).obs(1, 0, 1, -1).obs_ab(1, 1).fact(0, 0, 1, -1).fact(1, 0, 1).fact(1, 1, 1),
      term(Src::stated)
          .obs_ab(0, 0)
          .obs_by(1, 1)
          .obs_ay(1, 0)
          .fact(0, 0, 1, -1)
          .fact(0, 1, 1, -1)
          .fact(1, 0, 1)
          .fact(1, 1, 1),
      term(Src::oracle).c(1).obs(0, 0, 0).obs(1, 0, 1).obs(1, 1, 0, -1).fact(0, 1, 1, -1),
  };
  return p;
}

struct ClosedFormTables {
  ClosedFormPair fact_ey[2] = {fact_only_ey(0), fact_only_ey(1)};
  ClosedFormPair fact_ate = fact_only_ate();
  ClosedFormPair joint_ey[2] = {both_ey(0), both_ey(1)};
  ClosedFormPair joint_ate = both_ate();
  ClosedFormPair mono_fact_ey = mono_fact_ey_a1();
  ClosedFormPair mono_fact = mono_fact_ate();
  ClosedFormPair mono_joint_ey = mono_both_ey_a1();
  ClosedFormPair mono_joint = mono_both_ate();
};

inline const ClosedFormTables& closed_form_tables() {
  static const ClosedFormTables tables;
  return tables;
}

}  // namespace detail

// The expression pair for one analytic regime. Throws for combinations the
// closed forms do not cover (a custom estimand, or E[Y_a0] under
// monotonicity, which has no stated counterpart).
inline const ClosedFormPair& closed_form_table(Estimand::Kind kind, bool with_obs,
                                               bool monotone) {
  const auto& t = detail::closed_form_tables();
  if (kind == Estimand::Kind::custom)
    throw model_error("no closed form for custom estimands");
  if (monotone) {
    if (kind == Estimand::Kind::ey_a0)
      throw model_error("monotone closed forms cover E[Y_a1] and the ATE only");
    if (kind == Estimand::Kind::ey_a1) return with_obs ? t.mono_joint_ey : t.mono_fact_ey;
    return with_obs ? t.mono_joint : t.mono_fact;
  }
  if (kind == Estimand::Kind::ate) return with_obs ? t.joint_ate : t.fact_ate;
  const int a = kind == Estimand::Kind::ey_a1 ? 1 : 0;
  return with_obs ? t.joint_ey[a] : t.fact_ey[a];
}

// Adjudication record for one regime: how the published expressions were
// vetted against the LP oracle and what was amended. Exposed so reports can
// carry the provenance of every closed-form number they print.
inline std::vector<std::string> closed_form_notes(bool with_obs, bool monotone) {
  if (!with_obs && !monotone)
    return {
        "ate lower expression 2 uses the sum form -(E[Y00]+E[Y01]); the "
        "difference form printed alongside it fails the LP cross-check and is "
        "recorded as a typo",
        "two cross-arm expressions per side (e.g. E[Y10]-E[Y01]-1) were added "
        "from LP dual vertices; the four stated expressions alone are not "
        "sharp",
    };
  if (with_obs && !monotone)
    return {
        "E[Y_a] lower expression 4 is evaluated at outcome level y, not the "
        "printed y'; the printed level breaks complement-duality with upper "
        "expression 2 and fails the LP cross-check",
        "ate lower expression 16 reads E[Y(0,0)] where the print shows "
        "E[Y(0,1)]; the fix restores the mirror of the verified upper list",
    };
  if (!with_obs && monotone)
    return {
        "the two garbled outcome levels resolve to Pr(Y00=0) (ate lower 4) "
        "and Pr(Y01=0) (ate upper 6), matching the nonparametric lists",
        "E[Y_a1] under monotonicity needs seven lower and one upper "
        "completion expressions from LP dual vertices; the stated bound "
        "{0, E[Y10]+E[Y11], 1} is not sharp",
    };
  return {
      "ate lower expression 15 pairs the complementary observational cells "
      "(0,0,1) and (1,1,0); the print doubles the (1,0,1) cell, which fails "
      "the LP cross-check; one further lower vertex was added",
      "ate upper expressions 10 and 13 need outcome-resolved cells in place "
      "of the printed cell marginals; one further upper vertex was added",
      "three printed E[Y_a1] upper expressions are violated by one-point "
      "stratum models and were dropped; completion expressions from LP dual "
      "vertices (e.g. Pr(Y=1) as a lower bound) make both E[Y_a1] lists "
      "sharp",
  };
}

// Evaluate the closed-form sharp bounds. The presence of observational data
// selects the data regime; `monotone` selects the monotone variant.
inline BoundsResult closed_form_bounds(const Estimand& estimand, const FactorialDist& fact,
                                       const std::optional<ObservationalDist>& obs,
                                       bool monotone) {
  const ClosedFormPair& pair = closed_form_table(estimand.kind, obs.has_value(), monotone);
  const ObservationalDist* obs_ptr = obs ? &*obs : nullptr;
  BoundsResult out;
  out.method = BoundsMethod::closed_form;
  out.lower = pair.lower.max_over(fact, obs_ptr);
  out.upper = pair.upper.min_over(fact, obs_ptr);
  out.status = out.lower <= out.upper + 1e-9 ? BoundsStatus::feasible
                                             : BoundsStatus::infeasible;
  return out;
}

// ---------------------------------------------------------------------------
// Reconciliation of the two routes
// ---------------------------------------------------------------------------

struct ReconcileReport {
  BoundsResult lp;
  std::optional<BoundsResult> closed;
  double max_endpoint_diff = 0.0;
  bool agree = false;
  std::vector<std::string> notes;
};

// Cross-validates the LP bounds against the closed-form evaluation and
// reports the worst endpoint discrepancy. Assumption sets other than
// "none" and joint monotonicity have no closed form to reconcile against.
inline ReconcileReport reconcile(const Estimand& estimand, const FactorialDist& fact,
                                 const std::optional<ObservationalDist>& obs,
                                 const AssumptionSet& assumptions) {
  const AssumptionSet as = assumptions.normalized();
  const bool monotone = as.monotone_a && as.monotone_b;
  if (as.no_interaction || as.max_interaction || (as.monotone_a != as.monotone_b))
    throw model_error("no closed form for this assumption set");

  ReconcileReport report;
  report.notes = closed_form_notes(obs.has_value(), monotone);
  report.lp = lp_bounds(obs, fact, as, estimand, SlackPolicy::zero());
  if (report.lp.status != BoundsStatus::feasible) {
    report.notes.insert(report.notes.begin(),
                        "data jointly infeasible at zero slack; no comparison");
    return report;
  }
  report.closed = closed_form_bounds(estimand, fact, obs, monotone);
  report.max_endpoint_diff = std::max(std::abs(report.lp.lower - report.closed->lower),
                                      std::abs(report.lp.upper - report.closed->upper));
  report.agree = report.closed->status == BoundsStatus::feasible &&
                 report.max_endpoint_diff <= 1e-6;
  return report;
}

}  // namespace fbounds
