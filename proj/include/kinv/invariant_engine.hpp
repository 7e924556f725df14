#pragma once

// The universal invariant of a long knot, computed three ways:
//  * in D itself (a central element, truncated in h),
//  * as the scalar by which it acts on the highest weight vector m_0 of the
//    Verma-type module M(lambda, mu) of the Drinfeld double (a series in h
//    with polynomial coefficients in lambda),
//  * on the finite-dimensional module V_{n-1} (a Laurent polynomial in
//    s = q^{1/2}).
//
// Both algebra and module evaluations walk the bead word as a transfer
// computation: the state records the crossings whose first leg has been
// visited (and for modules the current basis index); states reached by
// different choices are merged before continuing.

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "kinv/algebra_d.hpp"
#include "kinv/diagrams.hpp"
#include "kinv/json_io.hpp"
#include "kinv/poly.hpp"
#include "kinv/series.hpp"

namespace kinv {

// ============================================================================
// Algebra level
// ============================================================================

namespace d {

inline int valuation(const Element& e) {
  int v = kExact;
  for (const auto& [m, c] : e.terms()) v = std::min(v, c.valuation());
  return v;
}

/// Bead labels for the crossings: R for positive and R^{-1} for negative
/// crossings (or their twisted versions). The first leg goes to the
/// over-strand.
struct CrossingTensors {
  Tensor positive;
  Tensor negative;
};

inline CrossingTensors untwisted_tensors(Algebra& alg) { return {alg.R(), alg.R_inverse()}; }

/// R-check = (1 (x) phi^{-1}) R (phi (x) 1) and its inverse.
inline CrossingTensors twisted_tensors(Algebra& alg, const Element& phi) {
  if (!alg.is_twisting_element(phi)) throw std::invalid_argument("not a twisting element");
  Tensor rc = alg.twist(alg.R(), phi);
  Element phi_inv = alg.inverse(phi);
  Tensor rci = alg.mul(alg.mul(alg.simple_tensor({phi_inv, alg.one()}), alg.R_inverse()),
                       alg.simple_tensor({alg.one(), phi}));
  return {rc, rci};
}

/// Product of the bead labels along the knot, without framing correction.
inline Element bead_product(Algebra& alg, const LongKnotDiagram& dg, const CrossingTensors& ct) {
  const int n = alg.order();
  const auto& beads = dg.traversal;
  const int nc = static_cast<int>(dg.braid.letters.size());

  // For each crossing, group its tensor terms by the leg met first; the
  // partner leg becomes an element applied at the second visit.
  struct Group {
    Mono first;
    Element second;
    int valuation;
  };
  std::vector<std::vector<Group>> groups(nc);
  std::vector<bool> seen(nc, false);
  for (const auto& s : beads) {
    if (s.is_pivot() || seen[s.crossing]) continue;
    seen[s.crossing] = true;
    const Tensor& t = dg.braid.letters[s.crossing] > 0 ? ct.positive : ct.negative;
    bool first_is_left = s.is_over();
    std::map<Mono, Element> g;
    for (const auto& term : split_terms(t)) {
      const Mono& here = first_is_left ? term.left : term.right;
      const Mono& there = first_is_left ? term.right : term.left;
      g[here] += Element::mono(there, term.coeff);
    }
    for (auto& [m, e] : g) groups[s.crossing].push_back({m, e, valuation(e)});
  }

  using Key = std::vector<std::pair<int, int>>;  // open crossing -> group index
  std::map<Key, Element> states;
  states[{}] = alg.one();
  Element kappa = alg.kappa(dg.pivot_power);
  for (const auto& s : beads) {
    std::map<Key, Element> next;
    auto put = [&next](Key key, Element e) {
      if (e.is_zero()) return;
      auto it = next.find(key);
      if (it == next.end())
        next.emplace(std::move(key), std::move(e));
      else
        it->second += e;
    };
    for (const auto& [key, prod] : states) {
      if (s.is_pivot()) {
        put(key, alg.mul(kappa, prod));
        continue;
      }
      const int c = s.crossing;
      auto open = std::find_if(key.begin(), key.end(), [c](const auto& p) { return p.first == c; });
      if (open != key.end()) {
        Key closed = key;
        closed.erase(closed.begin() + (open - key.begin()));
        put(std::move(closed), alg.mul(groups[c][open->second].second, prod));
        continue;
      }
      int budget = n - valuation(prod);
      for (const auto& [cc, gi] : key) budget -= groups[cc][gi].valuation;
      for (std::size_t gi = 0; gi < groups[c].size(); ++gi) {
        if (groups[c][gi].valuation > budget) continue;
        Key opened = key;
        opened.emplace_back(c, static_cast<int>(gi));
        std::sort(opened.begin(), opened.end());
        put(std::move(opened), alg.mul(Element::mono(groups[c][gi].first), prod));
      }
    }
    states = std::move(next);
  }
  Element total;
  for (const auto& [key, e] : states) total += e;
  return total;
}

/// Framing-corrected value: the bead product times the inverse kink to the
/// power of the writhe. The kinks are the one-crossing unknots braid[+-1].
inline Element framing_corrected(Algebra& alg, const LongKnotDiagram& dg, const CrossingTensors& ct) {
  Element z = bead_product(alg, dg, ct);
  int w = dg.writhe;
  if (w == 0) return z;
  BraidWord kink{2, {w > 0 ? -1 : 1}};
  Element inverse_kink = bead_product(alg, braid_to_long_knot(kink, dg.pivot_power), ct);
  for (int i = 0; i < std::abs(w); ++i) z = alg.mul(inverse_kink, z);
  return z;
}

/// Z_D of a 0-framed long knot.
inline Element compute_z_algebra(Algebra& alg, const LongKnotDiagram& dg) {
  return framing_corrected(alg, dg, untwisted_tensors(alg));
}

/// Same bead procedure with twisted R-matrices.
inline Element compute_z_twisted(Algebra& alg, const LongKnotDiagram& dg, const Element& phi) {
  return framing_corrected(alg, dg, twisted_tensors(alg, phi));
}

/// Strand-indexed value of an (unclosed) braid: slot k holds the product of
/// the beads met by the strand that starts at bottom position k.
inline Tensor braid_value(Algebra& alg, const BraidWord& b, const CrossingTensors& ct) {
  validate(b);
  std::vector<int> at(b.strands);  // at[pos] = strand at that position
  for (int i = 0; i < b.strands; ++i) at[i] = i;
  Tensor value = alg.identity(b.strands);
  for (int g : b.letters) {
    int left = std::abs(g) - 1;
    int mover_right = at[left];      // strand moving left -> right
    int mover_left = at[left + 1];  // strand moving right -> left
    int over = g > 0 ? mover_right : mover_left;
    int under = g > 0 ? mover_left : mover_right;
    const Tensor& t = g > 0 ? ct.positive : ct.negative;
    value = alg.mul(Algebra::embed(t, b.strands, {over, under}), value);
    std::swap(at[left], at[left + 1]);
  }
  return value;
}

/// Twisted braid value equals the untwisted one conjugated strand by strand:
/// the strand from bottom position k to top position pi(k) gets
/// phi^{pi(k)} (.) phi^{-k}.
inline bool braid_conjugation_check(Algebra& alg, const BraidWord& b, const Element& phi) {
  Tensor plain = braid_value(alg, b, untwisted_tensors(alg));
  Tensor twisted = braid_value(alg, b, twisted_tensors(alg, phi));
  auto perm = braid_permutation(b);
  std::vector<Element> left(b.strands), right(b.strands);
  for (int k = 0; k < b.strands; ++k) {
    left[k] = alg.pow(phi, perm[k]);
    right[k] = alg.pow(phi, -k);
  }
  Tensor conj = alg.mul(alg.mul(alg.simple_tensor(left), plain), alg.simple_tensor(right));
  return (conj - twisted).vanishes_through(alg.order());
}

}  // namespace d

// ============================================================================
// Module level
// ============================================================================

using LPoly = Poly<vars::Lambda>;
using LSeries = Series<LPoly>;
using SPoly = Poly<vars::S>;

namespace detail {

/// Symmetric Gaussian binomial [p choose n]_q as {q-exponent: coefficient}.
inline const std::map<int, Q>& q_binomial(int p, int n) {
  static std::map<std::pair<int, int>, std::map<int, Q>> cache;
  auto key = std::make_pair(p, n);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::map<int, Q> r;
  if (n == 0 || n == p) {
    r[0] = 1;
  } else if (n > 0 && n < p) {
    // [p n] = q^{-n} [p-1 n] + q^{p-n} [p-1 n-1]
    for (const auto& [e, c] : q_binomial(p - 1, n)) r[e - n] += c;
    for (const auto& [e, c] : q_binomial(p - 1, n - 1)) r[e + p - n] += c;
    std::erase_if(r, [](const auto& kv) { return kinv::is_zero(kv.second); });
  }
  return cache.emplace(key, std::move(r)).first->second;
}

/// Integer-affine weight c + l*lambda.
struct Affine {
  long c = 0;
  long l = 0;
  LPoly poly() const { return LPoly(Q(c)) + LPoly::var(0, 1, Q(l)); }
};

}  // namespace detail

/// Scalar ring for the state sum on the Verma module: h-series with
/// coefficients in Q[lambda], truncated at a fixed order.
class VermaWeights {
 public:
  using Ring = LSeries;
  explicit VermaWeights(int order) : n_(order) {}

  int order() const { return n_; }
  Ring one() const { return LSeries::constant(LPoly(1), n_); }
  bool pruned(const Ring& w, int pending) const { return w.is_zero() || w.valuation() + pending > n_; }
  int max_index(int budget) const { return budget; }

  /// q^{e(lambda)} = exp(h e(lambda)).
  const Ring& q_pow(const LPoly& e) {
    auto key = e.to_string();
    if (auto it = qpow_.find(key); it != qpow_.end()) return it->second;
    return qpow_.emplace(key, exp(LSeries::monomial(1, e, n_))).first->second;
  }
  Ring q_laurent(const std::map<int, Q>& c) {
    Ring r = LSeries::zero(n_);
    for (const auto& [e, k] : c) r += q_pow(LPoly(Q(e))) * k;
    return r;
  }
  /// prod_{k<n} (q^{x - k} - q^{k - x}) for an affine x.
  const Ring& f_product(const detail::Affine& x, int n) {
    auto key = std::make_tuple(x.c, x.l, n);
    if (auto it = fprod_.find(key); it != fprod_.end()) return it->second;
    Ring r = one();
    for (int k = 0; k < n; ++k) {
      LPoly e = detail::Affine{x.c - k, x.l}.poly();
      r = (r * (q_pow(e) - q_pow(-e))).truncated(n_);
    }
    return fprod_.emplace(key, std::move(r)).first->second;
  }
  Ring mul(const Ring& a, const Ring& b) const { return (a * b).truncated(n_); }

 private:
  int n_;
  std::map<std::string, Ring> qpow_;
  std::map<std::tuple<long, long, int>, Ring> fprod_;
};

/// Scalar ring for V_{n-1}: Laurent polynomials in s = q^{1/2}, lambda = n-1.
class VnWeights {
 public:
  using Ring = SPoly;
  explicit VnWeights(int dimension) : lambda_(dimension - 1) {}

  Ring one() const { return SPoly(1); }
  bool pruned(const Ring& w, int) const { return w.is_zero(); }
  int max_index(int) const { return lambda_ + 1; }

  Ring q_pow(const LPoly& e) const {
    Q v = 0;
    for (const auto& t : e.terms()) v += t.c * pow_q(Q(lambda_), t.e[0]);
    Q twice = v * 2;
    if (twice.get_den() != 1) throw ArithmeticError("q-power is not a half-integer");
    return SPoly::var(0, static_cast<int>(twice.get_num().get_si()));
  }
  Ring q_laurent(const std::map<int, Q>& c) const {
    Ring r;
    for (const auto& [e, k] : c) r += SPoly::var(0, 2 * e, k);
    return r;
  }
  Ring f_product(const detail::Affine& x, int n) const {
    Ring r(1);
    for (int k = 0; k < n; ++k) {
      LPoly e = detail::Affine{x.c - k, x.l}.poly();
      r = r * (q_pow(e) - q_pow(-e));
    }
    return r;
  }
  Ring mul(const Ring& a, const Ring& b) const { return a * b; }

 private:
  int lambda_;
};

/// V_{n-1} again, but as truncated h-series (q = e^h). Much cheaper than the
/// exact Laurent form when only low orders are needed.
class VnSeriesWeights {
 public:
  using Ring = Series<Q>;
  VnSeriesWeights(int dimension, int order) : lambda_(dimension - 1), n_(order) {}

  Ring one() const { return Ring::constant(Q(1), n_); }
  bool pruned(const Ring& w, int pending) const { return w.is_zero() || w.valuation() + pending > n_; }
  int max_index(int) const { return lambda_ + 1; }

  const Ring& q_pow(const LPoly& e) {
    Q v = 0;
    for (const auto& t : e.terms()) v += t.c * pow_q(Q(lambda_), t.e[0]);
    auto key = v.get_str();
    if (auto it = qpow_.find(key); it != qpow_.end()) return it->second;
    return qpow_.emplace(key, exp(Ring::monomial(1, v, n_))).first->second;
  }
  Ring q_laurent(const std::map<int, Q>& c) {
    Ring r = Ring::zero(n_);
    for (const auto& [e, k] : c) r += q_pow(LPoly(Q(e))) * k;
    return r;
  }
  Ring f_product(const detail::Affine& x, int n) {
    Ring r = one();
    for (int k = 0; k < n; ++k) {
      LPoly e = detail::Affine{x.c - k, x.l}.poly();
      r = (r * (q_pow(e) - q_pow(-e))).truncated(n_);
    }
    return r;
  }
  Ring mul(const Ring& a, const Ring& b) const { return (a * b).truncated(n_); }

 private:
  int lambda_;
  int n_;
  std::map<std::string, Ring> qpow_;
};

/// Generic transfer computation of <m_0| Z |m_0> on the module with highest
/// weight lambda and central character mu = mu_sign * lambda, using
///   R     = sum (q-q^{-1})^n/[n]! q^{-H(x)Ht/2 + n(n-1)/2} E^n (x) F^n
///   R^{-1}= sum (q^{-1}-q)^n/[n]! q^{-n(n-1)/2} E^n (x) F^n q^{+H(x)Ht/2}
///   kappa = q^{(H - Ht)/2}
/// with H m_p = (lambda - 2p - mu), Ht m_p = (2p - lambda - mu),
/// E m_p = [p] m_{p-1}, F m_p = q^{-mu} (q^{lambda-p} - q^{p-lambda})/(q-q^{-1}) m_{p+1}.
/// mu_sign = 0 gives the twisted R-matrix of the U_h(sl2) subalgebra.
template <class Weights>
typename Weights::Ring module_bead_product(const LongKnotDiagram& dg, Weights& wt, int mu_sign) {
  using Ring = typename Weights::Ring;
  using detail::Affine;
  const auto& beads = dg.traversal;

  // Pending crossing: index n, the basis index the Cartan factor needs from
  // the visited leg, and whether that leg was the over (E) leg.
  struct Pending {
    int crossing;
    int n;
    int ref;
    bool over_done;
    auto operator<=>(const Pending&) const = default;
  };
  struct Key {
    int p;
    std::vector<Pending> open;
    auto operator<=>(const Key&) const = default;
  };

  auto h_weight = [&](int p) { return Affine{-2L * p, 1L - mu_sign}; };      // H on m_p
  auto ht_weight = [&](int p) { return Affine{2L * p, -1L - mu_sign}; };     // Ht on m_p
  auto e_factor = [&](int p, int n) { return wt.q_laurent(detail::q_binomial(p, n)); };
  auto f_factor = [&](int p, int n) {
    // q^{-n mu} prod_k (q^{lambda-p-k} - q^{p+k-lambda})
    Ring r = wt.f_product(Affine{-p, 1}, n);
    return wt.mul(r, wt.q_pow(LPoly::var(0, 1, Q(-n * mu_sign))));
  };
  auto crossing_const = [&](bool positive, int n) {
    Ring r = wt.q_pow(LPoly(positive ? make_q(n * (n - 1), 2) : make_q(-n * (n - 1), 2)));
    if (!positive && n % 2 == 1) r = wt.mul(r, Ring(Q(-1)));
    return r;
  };
  auto cartan = [&](bool positive, int oref, int uref) {
    LPoly e = h_weight(oref).poly() * ht_weight(uref).poly() * (positive ? make_q(-1, 2) : make_q(1, 2));
    return wt.q_pow(e);
  };

  std::map<Key, Ring> states;
  states[Key{0, {}}] = wt.one();
  for (const auto& s : beads) {
    std::map<Key, Ring> next;
    auto put = [&next](Key key, Ring w) {
      if (kinv::is_zero(w)) return;
      auto it = next.find(key);
      if (it == next.end())
        next.emplace(std::move(key), std::move(w));
      else
        it->second += w;
    };
    for (const auto& [key, w] : states) {
      const int p = key.p;
      if (s.is_pivot()) {
        put(key, wt.mul(w, wt.q_pow(Affine{-2L * p, 1}.poly() * Q(s.power))));
        continue;
      }
      const int c = s.crossing;
      const bool positive = s.positive();
      const bool over = s.is_over();
      auto open = std::find_if(key.open.begin(), key.open.end(), [c](const Pending& q) { return q.crossing == c; });
      if (open != key.open.end()) {
        const Pending pend = *open;
        Key closed{p, key.open};
        closed.open.erase(closed.open.begin() + (open - key.open.begin()));
        Ring f;
        int oref, uref;
        if (over) {
          if (p < pend.n) continue;
          f = e_factor(p, pend.n);
          closed.p = p - pend.n;
          oref = positive ? p - pend.n : p;
          uref = pend.ref;
        } else {
          f = f_factor(p, pend.n);
          closed.p = p + pend.n;
          uref = positive ? p + pend.n : p;
          oref = pend.ref;
        }
        Ring nw = wt.mul(wt.mul(w, f), cartan(positive, oref, uref));
        if (wt.pruned(nw, 0)) continue;
        put(std::move(closed), std::move(nw));
        continue;
      }
      int pending_valuation = 0;
      for (const auto& q : key.open)
        if (q.over_done) pending_valuation += q.n;
      for (int n = 0;; ++n) {
        if (n > wt.max_index(0) + 64) break;
        if (wt.pruned(w, pending_valuation + n)) break;
        if (over && n > p) break;
        Key opened{p, key.open};
        Ring nw;
        if (over) {
          nw = wt.mul(w, e_factor(p, n));
          opened.p = p - n;
          opened.open.push_back({c, n, positive ? p - n : p, true});
        } else {
          Ring ff = f_factor(p, n);
          if (kinv::is_zero(ff)) break;
          nw = wt.mul(w, ff);
          opened.p = p + n;
          opened.open.push_back({c, n, positive ? p + n : p, false});
        }
        nw = wt.mul(nw, crossing_const(positive, n));
        std::sort(opened.open.begin(), opened.open.end());
        if (wt.pruned(nw, pending_valuation + (over ? n : 0))) continue;
        put(std::move(opened), std::move(nw));
      }
    }
    states = std::move(next);
  }
  Ring total = wt.one() * Q(0);
  for (const auto& [key, w] : states) {
    if (key.p != 0 || !key.open.empty()) throw std::logic_error("module state did not return to m_0");
    total += w;
  }
  return total;
}

/// Framing correction on a module: divide by the kink eigenvalue^writhe.
inline LSeries verma_framed(const LongKnotDiagram& dg, VermaWeights& wt, int mu_sign) {
  LSeries z = module_bead_product(dg, wt, mu_sign);
  if (dg.writhe == 0) return z;
  BraidWord kink{2, {dg.writhe > 0 ? 1 : -1}};
  LSeries k = module_bead_product(braid_to_long_knot(kink, dg.pivot_power), wt, mu_sign);
  LSeries kinv = inv(k);
  for (int i = 0; i < std::abs(dg.writhe); ++i) z = wt.mul(z, kinv);
  return z;
}

/// The colored Jones function J(lambda, h) from the Drinfeld double R-matrix
/// acting on M(lambda, sigma*lambda).
inline LSeries eval_verma(const LongKnotDiagram& dg, int sigma, int order) {
  if (sigma != 1 && sigma != -1) throw std::invalid_argument("sigma must be +1 or -1");
  VermaWeights wt(order);
  return verma_framed(dg, wt, sigma);
}

/// Same, using the twisted R-matrix (Cartan factor q^{H'(x)H'/2}).
inline LSeries eval_verma_twisted(const LongKnotDiagram& dg, int order) {
  VermaWeights wt(order);
  return verma_framed(dg, wt, 0);
}

/// Colored Jones polynomial J^n in s = q^{1/2}: the invariant on V_{n-1}.
inline SPoly eval_vn(const LongKnotDiagram& dg, int dimension) {
  if (dimension < 1) throw std::invalid_argument("module dimension must be at least 1");
  VnWeights wt(dimension);
  SPoly z = module_bead_product(dg, wt, 0);
  if (dg.writhe == 0) return z;
  BraidWord kink{2, {dg.writhe > 0 ? 1 : -1}};
  SPoly k = module_bead_product(braid_to_long_knot(kink, dg.pivot_power), wt, 0);
  auto kinv = unit_inverse(k);
  if (!kinv) throw std::logic_error("kink eigenvalue on V_n is not a monomial");
  for (int i = 0; i < std::abs(dg.writhe); ++i) z = z * *kinv;
  return z;
}

/// J^n(e^h) as a truncated h-series, computed on V_{n-1} directly.
inline Series<Q> eval_vn_series(const LongKnotDiagram& dg, int dimension, int order) {
  if (dimension < 1) throw std::invalid_argument("module dimension must be at least 1");
  VnSeriesWeights wt(dimension, order);
  Series<Q> z = module_bead_product(dg, wt, 0);
  if (dg.writhe == 0) return z;
  BraidWord kink{2, {dg.writhe > 0 ? 1 : -1}};
  Series<Q> kinv = inv(module_bead_product(braid_to_long_knot(kink, dg.pivot_power), wt, 0));
  for (int i = 0; i < std::abs(dg.writhe); ++i) z = wt.mul(z, kinv);
  return z;
}

/// s -> e^{h/2}: expands a Laurent polynomial in s as an h-series.
inline Series<Q> s_to_series(const SPoly& p, int order) {
  Series<Q> r = Series<Q>::zero(order);
  for (const auto& t : p.terms()) r += exp(Series<Q>::monomial(1, make_q(t.e[0], 2), order)) * t.c;
  return r;
}

/// lambda -> integer value, coefficientwise.
inline Series<Q> at_lambda(const LSeries& j, long lambda) {
  return j.map([lambda](const LPoly& p) {
    Q v = 0;
    for (const auto& t : p.terms()) v += t.c * pow_q(Q(lambda), t.e[0]);
    return v;
  });
}

// ============================================================================
// phi-images of D elements on m_0
// ============================================================================

using LEPoly = Poly<vars::LambdaEps>;
using LESeries = Series<LEPoly>;

/// Action of phi(u) on m_0 in M(lambda, sigma*lambda), where phi sends
/// y -> E, a -> Ht/2, b -> -eps H/2, x -> (eps/2h)(q - q^{-1}) q^{-Ht} F and
/// h_D -> 2h/eps. Returns the coefficient of each basis vector m_p.
inline std::map<int, LESeries> phi_on_m0(const d::Element& u, int sigma, int order) {
  const int guard = order + 1;
  const LEPoly lam = LEPoly::var(0);
  const LEPoly eps = LEPoly::var(1);
  const LEPoly mu = lam * Q(sigma);
  auto qpow = [guard](const LEPoly& e) { return exp(LESeries::monomial(1, e, guard)); };
  auto h_eig = [&](int p) { return lam - LEPoly(2 * p) - mu; };
  auto ht_eig = [&](int p) { return LEPoly(2 * p) - lam - mu; };

  // x^l m_0 = X_l m_l and E^i m_l = [l][l-1]...[l-i+1] m_{l-i}.
  std::map<int, LESeries> x_chain{{0, LESeries::constant(LEPoly(1), order)}};
  auto x_coeff = [&](int l) -> const LESeries& {
    for (int k = static_cast<int>(x_chain.size()); k <= l; ++k) {
      int p = k - 1;
      LEPoly ex = lam - LEPoly(p);
      LESeries diff = qpow(ex) - qpow(-ex);  // valuation 1
      LESeries step = div_exact(diff, LESeries::monomial(1, LEPoly(1), guard));
      step = step * qpow(-ht_eig(p + 1) - mu) * LESeries::constant(eps * make_q(1, 2));
      x_chain[k] = (x_chain[k - 1] * step).truncated(order);
    }
    return x_chain[l];
  };
  auto e_chain = [&](int l, int i) {
    LESeries r = LESeries::constant(LEPoly(1), order);
    for (int k = 0; k < i; ++k) {
      int p = l - k;
      LESeries qi = LESeries::zero(guard);
      for (int j = 0; j < p; ++j) qi += qpow(LEPoly(p - 1 - 2 * j));
      r = (r * qi).truncated(order);
    }
    return r;
  };

  std::map<int, LESeries> out;
  for (const auto& [m, c] : u.terms()) {
    if (m.y > m.x) continue;  // E^i kills m_l for i > l
    int l = m.x;
    int p = l - m.y;
    LEPoly cart = pow_ring(ht_eig(l) * make_q(1, 2), m.a) * pow_ring(eps * h_eig(l) * make_q(-1, 2), m.b);
    // h_D^d eps^e -> 2^d h^d eps^{e-d}
    std::vector<LEPoly> coeffs;
    for (int dd = 0; dd <= std::min(c.order(), order); ++dd) {
      LEPoly v;
      d::EpsPoly cd = c.coeff(dd);
      for (const auto& t : cd.terms()) v += LEPoly::monomial({0, t.e[0] - dd}, t.c * pow_q(Q(2), dd));
      coeffs.push_back(v);
    }
    LESeries cs = LESeries::from_coeffs(std::move(coeffs), std::min(c.order(), order));
    LESeries term = (cs * x_coeff(l) * e_chain(l, m.y)).truncated(order) * LESeries::constant(cart);
    auto it = out.find(p);
    if (it == out.end())
      out.emplace(p, term);
    else
      it->second += term;
  }
  return out;
}

// ============================================================================
// Report metadata
// ============================================================================

inline constexpr const char* kSchemaVersion = "kinv-report/1";

/// Everything a reader needs to compare two runs bit-exactly.
inline json conventions_json(int sigma) {
  return {{"q", "e^h"},
          {"sigma", sigma},
          {"mu", "sigma*lambda"},
          {"pivot_calibration", "alpha-leg-over/kappa^" + std::to_string(kPivotPerArc) + "-per-closing-arc"},
          {"framing_correction", "inverse-kink^writhe"},
          {"jones_variable", "s = q^(1/2)"}};
}

}  // namespace kinv
