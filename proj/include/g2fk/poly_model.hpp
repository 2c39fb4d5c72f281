#pragma once

// The group S = S_0 Q built from binary cubic forms. V has basis
// (X^3, X^2Y, XY^2, Y^3); Q = V x F with (v,y)(w,z) = (v+w, y+z+beta(v,w));
// L = F^x x GL_2(F) acts by substitution and S_0 = {x_1(a)} acts through
// lower unitriangular matrices. Only primes p >= 5 are accepted.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "g2fk/field.hpp"
#include "g2fk/group.hpp"

namespace g2fk {

struct CubicVector {
  std::array<int, 4> c{};  // coefficients of X^3, X^2Y, XY^2, Y^3
  friend bool operator==(const CubicVector&, const CubicVector&) = default;
};

struct QElement {
  CubicVector v;
  int z = 0;
  friend bool operator==(const QElement&, const QElement&) = default;
};

/// Normal form x_1(a) (v, z).
struct SElement {
  int a = 0;
  CubicVector v;
  int z = 0;
  friend bool operator==(const SElement&, const SElement&) = default;
};

struct Mat2 {
  std::array<int, 4> m{1, 0, 0, 1};  // row-major (alpha beta / gamma delta)
  int operator()(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }
};

/// (t, A) in L. Rejected at construction unless t != 0 and det A != 0.
class LElement {
 public:
  LElement(const PrimeField& f, int t, Mat2 a) : t_(f.reduce(t)) {
    for (auto& x : a.m) x = f.reduce(x);
    a_ = a;
    if (t_ == 0) throw FieldError("L element needs t != 0");
    if (det(f) == 0) throw FieldError("L element needs det A != 0");
  }
  int t() const { return t_; }
  const Mat2& matrix() const { return a_; }
  int det(const PrimeField& f) const { return f.sub(f.mul(a_(0, 0), a_(1, 1)), f.mul(a_(0, 1), a_(1, 0))); }

 private:
  int t_;
  Mat2 a_;
};

/// (t, (alpha 0 / gamma beta)) in B_0.
class BElement {
 public:
  BElement(const PrimeField& f, int t, int alpha, int gamma, int beta)
      : t_(f.reduce(t)), alpha_(f.reduce(alpha)), gamma_(f.reduce(gamma)), beta_(f.reduce(beta)) {
    if (t_ == 0 || alpha_ == 0 || beta_ == 0) throw FieldError("B_0 element needs t, alpha, beta nonzero");
  }
  /// The diagonal element (t, diag(lambda, 1)).
  static BElement diagonal(const PrimeField& f, int t, int lambda) { return {f, t, lambda, 0, 1}; }

  int t() const { return t_; }
  int alpha() const { return alpha_; }
  int gamma() const { return gamma_; }
  int beta() const { return beta_; }
  LElement as_l(const PrimeField& f) const { return {f, t_, Mat2{{alpha_, 0, gamma_, beta_}}}; }

 private:
  int t_, alpha_, gamma_, beta_;
};

using Mat4 = std::array<std::array<int, 4>, 4>;

class PolyModel {
 public:
  explicit PolyModel(unsigned p) : f_(p) {
    if (p < 5) throw FieldError("model requires p >= 5");
    // beta(X^aY^b, X^cY^d) = (-1)^a / C(3,a) when a = d, else 0. Basis index
    // i carries X^{3-i} Y^i, so a = 3 - i and d = j.
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const int a = 3 - i;
        gram_[i][j] = 0;
        if (a == j) {
          const int sign = (a % 2 == 0) ? 1 : f_.p - 1;
          gram_[i][j] = f_.mul(sign, binom3(static_cast<unsigned>(a), p).inv().value());
        }
      }
    unitri_.resize(p);
    for (int a = 0; a < f_.p; ++a) unitri_[a] = substitution_matrix(LElement(f_, 1, Mat2{{1, 0, a, 1}}));
  }

  unsigned prime() const { return static_cast<unsigned>(f_.p); }
  const PrimeField& field() const { return f_; }
  const Mat4& gram() const { return gram_; }

  int beta(const CubicVector& v, const CubicVector& w) const {
    long long s = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) s += static_cast<long long>(gram_[i][j]) * v.c[i] * w.c[j];
    return f_.reduce(s);
  }

  QElement q_multiply(const QElement& a, const QElement& b) const {
    QElement r;
    for (int i = 0; i < 4; ++i) r.v.c[i] = f_.add(a.v.c[i], b.v.c[i]);
    r.z = f_.reduce(static_cast<long long>(a.z) + b.z + beta(a.v, b.v));
    return r;
  }
  QElement q_inverse(const QElement& a) const {
    QElement r;
    for (int i = 0; i < 4; ++i) r.v.c[i] = f_.neg(a.v.c[i]);
    r.z = f_.neg(a.z);
    return r;
  }

  /// Row i holds the image of basis vector i: t (alpha X + beta Y)^{3-i} (gamma X + delta Y)^i.
  Mat4 substitution_matrix(const LElement& g) const {
    const Mat2& A = g.matrix();
    Mat4 m{};
    for (int i = 0; i < 4; ++i) {
      // Polynomials in X, Y of degree k stored by Y-exponent.
      std::vector<int> poly{g.t()};
      auto times = [&](int cx, int cy) {
        std::vector<int> next(poly.size() + 1, 0);
        for (std::size_t k = 0; k < poly.size(); ++k) {
          next[k] = f_.add(next[k], f_.mul(poly[k], cx));
          next[k + 1] = f_.add(next[k + 1], f_.mul(poly[k], cy));
        }
        poly = std::move(next);
      };
      for (int k = 0; k < 3 - i; ++k) times(A(0, 0), A(0, 1));
      for (int k = 0; k < i; ++k) times(A(1, 0), A(1, 1));
      for (int j = 0; j < 4; ++j) m[i][j] = poly[j];
    }
    return m;
  }

  CubicVector apply(const CubicVector& v, const Mat4& m) const {
    CubicVector r;
    for (int j = 0; j < 4; ++j) {
      long long s = 0;
      for (int i = 0; i < 4; ++i) s += static_cast<long long>(v.c[i]) * m[i][j];
      r.c[j] = f_.reduce(s);
    }
    return r;
  }

  CubicVector l_act_vector(const CubicVector& v, const LElement& g) const {
    return apply(v, substitution_matrix(g));
  }

  /// (v, z)^{(t,A)} = (v.(t,A), t^2 (det A)^3 z).
  QElement q_act(const QElement& q, const LElement& g) const {
    const int d = g.det(f_);
    const int scale = f_.mul(f_.mul(g.t(), g.t()), f_.pow(d, 3));
    return {l_act_vector(q.v, g), f_.mul(scale, q.z)};
  }

  /// Elements of L acting trivially on Q, found by exhaustive search.
  std::vector<LElement> action_kernel() const {
    std::vector<LElement> out;
    const int p = f_.p;
    for (int t = 1; t < p; ++t)
      for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b)
          for (int c = 0; c < p; ++c)
            for (int d = 0; d < p; ++d) {
              if (f_.sub(f_.mul(a, d), f_.mul(b, c)) == 0) continue;
              LElement g(f_, t, Mat2{{a, b, c, d}});
              if (acts_trivially(g)) out.push_back(g);
            }
    return out;
  }

  bool acts_trivially(const LElement& g) const {
    const Mat4 m = substitution_matrix(g);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (m[i][j] != (i == j ? 1 : 0)) return false;
    const int d = g.det(f_);
    return f_.mul(f_.mul(g.t(), g.t()), f_.pow(d, 3)) == 1;
  }

  /// (a, q)(a', q') = (a + a', q^{x_1(a')} q').
  SElement s_multiply(const SElement& x, const SElement& y) const {
    SElement r;
    r.a = f_.add(x.a, y.a);
    const CubicVector moved = apply(x.v, unitri_[y.a]);
    for (int i = 0; i < 4; ++i) r.v.c[i] = f_.add(moved.c[i], y.v.c[i]);
    r.z = f_.reduce(static_cast<long long>(x.z) + y.z + beta(moved, y.v));
    return r;
  }

  SElement s_inverse(const SElement& x) const {
    SElement r;
    r.a = f_.neg(x.a);
    CubicVector neg;
    for (int i = 0; i < 4; ++i) neg.c[i] = f_.neg(x.v.c[i]);
    r.v = apply(neg, unitri_[r.a]);
    r.z = f_.neg(x.z);
    return r;
  }

  /// x_k(lambda), k = 1..6.
  SElement generator(int k, int lambda) const {
    const int l = f_.reduce(lambda);
    SElement s;
    switch (k) {
      case 1: s.a = l; break;
      case 2: s.v.c[3] = l; break;
      case 3: s.v.c[2] = f_.reduce(-3LL * l); break;
      case 4: s.v.c[1] = f_.reduce(3LL * l); break;
      case 5: s.v.c[0] = f_.neg(l); break;
      case 6: s.z = f_.reduce(-2LL * l); break;
      default: throw GroupError("generator index must be 1..6");
    }
    return s;
  }

  /// Exponents w with s = x_1^{w_1} x_2^{w_2} ... x_6^{w_6}.
  Word word(const SElement& s) const {
    Word w{};
    w[0] = s.a;
    w[1] = s.v.c[3];
    w[2] = f_.mul(f_.neg(s.v.c[2]), f_.inv(3));
    w[3] = f_.mul(s.v.c[1], f_.inv(3));
    w[4] = f_.neg(s.v.c[0]);
    SElement partial;
    for (int k = 2; k <= 5; ++k) partial = s_multiply(partial, generator(k, w[k - 1]));
    // The remaining central part is x_6(c) = (0, -2c).
    w[5] = f_.mul(f_.sub(s.z, partial.z), f_.inv(f_.p - 2));
    return w;
  }

  SElement from_word(const Word& w) const {
    SElement s;
    for (int k = 1; k <= 6; ++k)
      if (w[k - 1] != 0) s = s_multiply(s, generator(k, w[k - 1]));
    return s;
  }

  /// s^d = d^-1 s d for d in B_0: x_1(a) goes to x_1(a alpha / beta) and the
  /// Q part is acted on by q_act.
  SElement b_conjugate(const SElement& s, const BElement& d) const {
    SElement r;
    r.a = f_.mul(s.a, f_.mul(d.alpha(), f_.inv(d.beta())));
    const QElement q = q_act({s.v, s.z}, d.as_l(f_));
    r.v = q.v;
    r.z = q.z;
    return r;
  }

  const Mat4& unitriangular_action(int a) const { return unitri_[f_.reduce(a)]; }

 private:
  PrimeField f_;
  Mat4 gram_{};
  std::vector<Mat4> unitri_;
};

/// S as a GroupTable. Ids are the mixed-radix encoding of (a, v_0..v_3, z)
/// with a most significant, so the carrier is the coordinate cube [0, p^6).
class PolyTable {
 public:
  explicit PolyTable(unsigned p) : model_(p), p_(static_cast<int>(p)) {
    n_ = 1;
    for (int i = 0; i < 6; ++i) n_ *= static_cast<std::size_t>(p);
    coords_.resize(n_);
    for (std::size_t id = 0; id < n_; ++id) {
      std::size_t rest = id;
      for (int i = 5; i >= 0; --i) {
        coords_[id][static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(rest % p);
        rest /= p;
      }
    }
    const int q = p_;
    for (int a = 0; a < q; ++a) flat_unitri_.push_back(model_.unitriangular_action(a));
    const auto& g = model_.gram();
    b03_ = g[0][3];
    b12_ = g[1][2];
    b21_ = g[2][1];
    b30_ = g[3][0];
    for (int k = 1; k <= 6; ++k) gens_.push_back(encode(model_.generator(k, 1)));
  }

  std::size_t size() const { return n_; }
  unsigned prime() const { return static_cast<unsigned>(p_); }
  Id identity() const { return 0; }
  std::span<const Id> generators() const { return gens_; }
  const PolyModel& model() const { return model_; }

  Id encode(const SElement& s) const {
    std::size_t id = static_cast<std::size_t>(s.a);
    for (int i = 0; i < 4; ++i) id = id * p_ + static_cast<std::size_t>(s.v.c[i]);
    id = id * p_ + static_cast<std::size_t>(s.z);
    return static_cast<Id>(id);
  }
  SElement decode(Id id) const {
    const auto& c = coords_[id];
    SElement s;
    s.a = c[0];
    for (int i = 0; i < 4; ++i) s.v.c[i] = c[static_cast<std::size_t>(i + 1)];
    s.z = c[5];
    return s;
  }
  std::array<std::uint8_t, 6> coordinates(Id id) const { return coords_[id]; }

  Id mul(Id x, Id y) const {
    const auto& a = coords_[x];
    const auto& b = coords_[y];
    const Mat4& m = flat_unitri_[b[0]];
    int v[4];
    for (int j = 0; j < 4; ++j)
      v[j] = a[1] * m[0][j] + a[2] * m[1][j] + a[3] * m[2][j] + a[4] * m[3][j];
    const int w0 = b[1], w1 = b[2], w2 = b[3], w3 = b[4];
    for (int& x_ : v) x_ %= p_;
    const int beta = b03_ * v[0] * w3 + b12_ * v[1] * w2 + b21_ * v[2] * w1 + b30_ * v[3] * w0;
    std::size_t id = static_cast<std::size_t>((a[0] + b[0]) % p_);
    id = id * p_ + static_cast<std::size_t>((v[0] + w0) % p_);
    id = id * p_ + static_cast<std::size_t>((v[1] + w1) % p_);
    id = id * p_ + static_cast<std::size_t>((v[2] + w2) % p_);
    id = id * p_ + static_cast<std::size_t>((v[3] + w3) % p_);
    id = id * p_ + static_cast<std::size_t>((a[5] + b[5] + beta) % p_);
    return static_cast<Id>(id);
  }

  Id inv(Id x) const { return encode(model_.s_inverse(decode(x))); }

  Word word(Id x) const { return model_.word(decode(x)); }
  Id from_word(const Word& w) const { return encode(model_.from_word(w)); }

  /// x_k(lambda) as an id.
  Id x(int k, int lambda = 1) const { return encode(model_.generator(k, lambda)); }

 private:
  PolyModel model_;
  int p_;
  std::size_t n_ = 0;
  std::vector<std::array<std::uint8_t, 6>> coords_;
  std::vector<Mat4> flat_unitri_;
  int b03_ = 0, b12_ = 0, b21_ = 0, b30_ = 0;
  std::vector<Id> gens_;
};

}  // namespace g2fk
