#pragma once

// Graded modules over A = Sym(V*) stored degree by degree over a finite
// window [lo, hi].  Linear forms have degree 2; module elements are
// coordinate vectors in a fixed basis of each graded piece.

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fanih/error.hpp"
#include "fanih/linalg.hpp"
#include "fanih/polynomial.hpp"

namespace fanih {

class GradedModule {
 public:
  GradedModule() = default;
  /// Zero module with `n` acting coordinate forms on degrees [lo, hi].
  GradedModule(int n, int lo, int hi)
      : n_(n), lo_(lo), hi_(hi), dims_(span(lo, hi), 0), acts_(static_cast<std::size_t>(n)) {
    for (auto& a : acts_) a.assign(span(lo, hi), Matrix());
  }

  int ambient() const noexcept { return n_; }
  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return hi_; }
  bool in_range(int d) const noexcept { return d >= lo_ && d <= hi_; }

  std::size_t dim(int d) const { return in_range(d) ? dims_[slot(d)] : 0; }

  void set_dim(int d, std::size_t k) {
    require(d);
    dims_[slot(d)] = k;
  }

  /// Matrix of multiplication by x_i from degree d to d + 2.
  const Matrix& act(int i, int d) const {
    require(d);
    require(d + 2);
    return acts_[static_cast<std::size_t>(i)][slot(d)];
  }

  void set_act(int i, int d, Matrix m) {
    require(d);
    require(d + 2);
    if (m.rows() != dim(d + 2) || m.cols() != dim(d)) {
      throw std::invalid_argument("action matrix has wrong shape at degree " + std::to_string(d));
    }
    acts_[static_cast<std::size_t>(i)][slot(d)] = std::move(m);
  }

  /// Multiplication by the linear form sum_i f_i x_i from degree d.
  Matrix act_form(const Vector& f, int d) const {
    Matrix out(dim(d + 2), dim(d));
    for (int i = 0; i < n_; ++i) {
      const Rational& c = f[static_cast<std::size_t>(i)];
      if (sgn(c) != 0) out += act(i, d) * c;
    }
    return out;
  }

  /// Span of x_i M_{d-2} inside M_d as columns.
  Matrix positive_part(int d) const {
    if (!in_range(d - 2)) return Matrix(dim(d), 0);
    std::vector<Matrix> parts;
    for (int i = 0; i < n_; ++i) parts.push_back(act(i, d - 2));
    return hstack(parts, dim(d));
  }

  Polynomial hilbert() const {
    Polynomial p;
    for (int d = lo_; d <= hi_; ++d) p.add(d, static_cast<std::int64_t>(dim(d)));
    return p;
  }

  bool is_zero() const {
    for (auto k : dims_) {
      if (k) return false;
    }
    return true;
  }

  /// M(t): the piece of degree k is M_{k+t}.
  GradedModule shifted(int t) const {
    GradedModule out = *this;
    out.lo_ = lo_ - t;
    out.hi_ = hi_ - t;
    return out;
  }

  /// Checks act_i act_j = act_j act_i on every degree; returns the first
  /// failing degree.
  std::optional<int> commutativity_failure() const {
    for (int d = lo_; d + 4 <= hi_; ++d) {
      for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
          if (!(act(i, d + 2) * act(j, d) == act(j, d + 2) * act(i, d))) return d;
        }
      }
    }
    return std::nullopt;
  }

 private:
  static std::size_t span(int lo, int hi) { return hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0; }
  std::size_t slot(int d) const { return static_cast<std::size_t>(d - lo_); }
  void require(int d) const {
    if (!in_range(d)) throw std::out_of_range("degree " + std::to_string(d) + " outside module window");
  }

  int n_ = 0;
  int lo_ = 0;
  int hi_ = -1;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<Matrix>> acts_;
};

/// Degree-preserving linear map given by one matrix per degree.
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(int lo, int hi) : lo_(lo), mats_(hi >= lo ? static_cast<std::size_t>(hi - lo + 1) : 0) {}

  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(mats_.size()) - 1; }

  const Matrix& at(int d) const { return mats_.at(static_cast<std::size_t>(d - lo_)); }
  void set(int d, Matrix m) { mats_.at(static_cast<std::size_t>(d - lo_)) = std::move(m); }

  GradedMap shifted(int t) const {
    GradedMap out = *this;
    out.lo_ = lo_ - t;
    return out;
  }

 private:
  int lo_ = 0;
  std::vector<Matrix> mats_;
};

/// First degree where f fails to intertwine the actions of source and target.
inline std::optional<int> intertwining_failure(const GradedMap& f, const GradedModule& source,
                                               const GradedModule& target) {
  for (int d = source.lo(); d + 2 <= source.hi(); ++d) {
    for (int i = 0; i < source.ambient(); ++i) {
      if (!(target.act(i, d) * f.at(d) == f.at(d + 2) * source.act(i, d))) return d;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Direct sums and kernels

struct DirectSum {
  GradedModule module;
  std::vector<std::vector<std::size_t>> offsets;  // offsets[d - lo][k]: start of summand k
};

inline DirectSum direct_sum(const std::vector<const GradedModule*>& parts, int n, int lo, int hi) {
  DirectSum out{GradedModule(n, lo, hi), {}};
  for (int d = lo; d <= hi; ++d) {
    std::vector<std::size_t> off;
    std::size_t total = 0;
    for (const auto* p : parts) {
      off.push_back(total);
      total += p->dim(d);
    }
    out.module.set_dim(d, total);
    out.offsets.push_back(std::move(off));
  }
  for (int d = lo; d + 2 <= hi; ++d) {
    const auto& src = out.offsets[static_cast<std::size_t>(d - lo)];
    const auto& dst = out.offsets[static_cast<std::size_t>(d + 2 - lo)];
    for (int i = 0; i < n; ++i) {
      Matrix m(out.module.dim(d + 2), out.module.dim(d));
      for (std::size_t k = 0; k < parts.size(); ++k) {
        if (parts[k]->dim(d) && parts[k]->dim(d + 2)) m.set_block(dst[k], src[k], parts[k]->act(i, d));
      }
      out.module.set_act(i, d, std::move(m));
    }
  }
  return out;
}

/// A submodule presented by the inclusion of its basis, one matrix per degree.
struct Submodule {
  GradedModule module;
  std::vector<Kernel> kernels;  // kernels[d - lo]: basis columns in the ambient module

  const Matrix& inclusion(int d) const { return kernels.at(static_cast<std::size_t>(d - module.lo())).basis; }
  const Kernel& kernel_at(int d) const { return kernels.at(static_cast<std::size_t>(d - module.lo())); }
};

/// Kernel of an A-linear map out of M, given degreewise, with induced action.
inline Submodule kernel_submodule(const GradedModule& m, const std::function<Matrix(int)>& map) {
  Submodule out{GradedModule(m.ambient(), m.lo(), m.hi()), {}};
  for (int d = m.lo(); d <= m.hi(); ++d) {
    Matrix f = map(d);
    Kernel k = f.rows() == 0 ? kernel(Matrix(0, m.dim(d)), m.dim(d)) : kernel(f, m.dim(d));
    out.module.set_dim(d, k.dim());
    out.kernels.push_back(std::move(k));
  }
  for (int d = m.lo(); d + 2 <= m.hi(); ++d) {
    const Kernel& src = out.kernel_at(d);
    const Kernel& dst = out.kernel_at(d + 2);
    for (int i = 0; i < m.ambient(); ++i) {
      if (src.dim() == 0 || dst.dim() == 0) {
        out.module.set_act(i, d, Matrix(dst.dim(), src.dim()));
        continue;
      }
      out.module.set_act(i, d, dst.coordinates(m.act(i, d) * src.basis));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Free modules over polynomial subalgebras

using Monomial = std::vector<int>;

/// Monomials of total degree `total` in k variables, in lexicographic order
/// with the first variable's exponent decreasing.
inline std::vector<Monomial> monomials(std::size_t k, int total) {
  std::vector<Monomial> out;
  if (total < 0) return out;
  if (k == 0) {
    if (total == 0) out.emplace_back();
    return out;
  }
  Monomial cur(k, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == k) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[i] = e;
      rec(i + 1, left - e);
    }
  };
  rec(0, total);
  return out;
}

/// Free module over the polynomial ring in k variables y_j (degree 2), made an
/// A-module through x_i -> sum_j coeff[i][j] y_j.  Basis of each degree:
/// (generator, monomial), generators in order, monomials as in monomials().
class FreeModule {
 public:
  struct BasisElement {
    std::size_t gen;
    Monomial mono;
  };

  FreeModule(std::vector<Vector> coeff, std::size_t k, std::vector<int> gens, int lo, int hi)
      : coeff_(std::move(coeff)), k_(k), gens_(std::move(gens)),
        module_(static_cast<int>(coeff_.size()), lo, hi) {
    for (int d = lo; d <= hi; ++d) {
      std::vector<BasisElement> b;
      std::map<std::pair<std::size_t, Monomial>, std::size_t> idx;
      for (std::size_t g = 0; g < gens_.size(); ++g) {
        const int rest = d - gens_[g];
        if (rest < 0 || rest % 2 != 0) continue;
        for (auto& m : monomials(k_, rest / 2)) {
          idx[{g, m}] = b.size();
          b.push_back({g, std::move(m)});
        }
      }
      module_.set_dim(d, b.size());
      basis_.push_back(std::move(b));
      index_.push_back(std::move(idx));
    }
    for (int d = lo; d + 2 <= hi; ++d) {
      for (std::size_t i = 0; i < coeff_.size(); ++i) {
        Matrix m(module_.dim(d + 2), module_.dim(d));
        const auto& src = basis(d);
        for (std::size_t c = 0; c < src.size(); ++c) {
          for (std::size_t j = 0; j < k_; ++j) {
            if (sgn(coeff_[i][j]) == 0) continue;
            Monomial up = src[c].mono;
            ++up[j];
            m(index_of(d + 2, src[c].gen, up), c) += coeff_[i][j];
          }
        }
        module_.set_act(static_cast<int>(i), d, std::move(m));
      }
    }
  }

  /// Polynomial functions on the span of `span_basis`, one generator per entry
  /// of `gens`.  The coordinate y_j is dual to span_basis[j].
  static FreeModule on_span(const std::vector<Vector>& span_basis, int n, std::vector<int> gens, int lo, int hi) {
    std::vector<Vector> coeff(static_cast<std::size_t>(n), Vector(span_basis.size()));
    for (std::size_t j = 0; j < span_basis.size(); ++j) {
      for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) coeff[i][j] = span_basis[j][i];
    }
    return FreeModule(std::move(coeff), span_basis.size(), std::move(gens), lo, hi);
  }

  const GradedModule& module() const noexcept { return module_; }
  GradedModule& module() noexcept { return module_; }
  std::size_t variables() const noexcept { return k_; }
  const std::vector<int>& generators() const noexcept { return gens_; }

  const std::vector<BasisElement>& basis(int d) const {
    return basis_.at(static_cast<std::size_t>(d - module_.lo()));
  }

  std::size_t index_of(int d, std::size_t gen, const Monomial& m) const {
    return index_.at(static_cast<std::size_t>(d - module_.lo())).at({gen, m});
  }

 private:
  std::vector<Vector> coeff_;
  std::size_t k_;
  std::vector<int> gens_;
  GradedModule module_;
  std::vector<std::vector<BasisElement>> basis_;
  std::vector<std::map<std::pair<std::size_t, Monomial>, std::size_t>> index_;
};

/// The A-linear map out of a free module sending generator g to images[g]
/// (a vector in target degree gens[g]).  `lifts[j]` is an ambient form acting
/// on the target as the variable y_j.
inline GradedMap free_module_map(const FreeModule& source, const GradedModule& target,
                                 const std::vector<Vector>& images, const std::vector<Vector>& lifts) {
  const GradedModule& sm = source.module();
  GradedMap out(sm.lo(), sm.hi());
  std::map<int, std::vector<Matrix>> lifted;  // degree -> act of lifts[j] on target
  auto lift_act = [&](std::size_t j, int d) -> const Matrix& {
    auto it = lifted.find(d);
    if (it == lifted.end()) {
      std::vector<Matrix> v;
      for (const auto& u : lifts) v.push_back(target.act_form(u, d));
      it = lifted.emplace(d, std::move(v)).first;
    }
    return it->second[j];
  };
  for (int d = sm.lo(); d <= sm.hi(); ++d) {
    const auto& basis = source.basis(d);
    Matrix m(target.dim(d), basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const auto& e = basis[c];
      Vector col;
      std::size_t j = 0;
      while (j < e.mono.size() && e.mono[j] == 0) ++j;
      if (j == e.mono.size()) {
        col = images[e.gen];
      } else {
        Monomial down = e.mono;
        --down[j];
        const std::size_t prev = source.index_of(d - 2, e.gen, down);
        col = lift_act(j, d - 2).apply(out.at(d - 2).column(prev));
      }
      for (std::size_t r = 0; r < col.size(); ++r) m(r, c) = col[r];
    }
    out.set(d, std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Minimal generators and freeness

struct Generators {
  GradedDims dims;
  // Per degree: indices of standard basis vectors of M_d completing
  // A^+ M inside M_d; these represent a basis of the generator space.
  std::map<int, std::vector<std::size_t>> complement;
  bool near_cap = false;  // generators found in (hi - 2, hi]
};

inline Generators minimal_generators(const GradedModule& m, ComplementOrder order = ComplementOrder::Forward) {
  Generators g;
  for (int d = m.lo(); d <= m.hi(); ++d) {
    const std::size_t k = m.dim(d);
    if (k == 0) continue;
    std::vector<std::size_t> comp = complement_indices(m.positive_part(d), k, order);
    if (comp.empty()) continue;
    g.dims.add(d, static_cast<std::int64_t>(comp.size()));
    if (d > m.hi() - 2) g.near_cap = true;
    g.complement[d] = std::move(comp);
  }
  return g;
}

/// Hilbert series of a free module over k variables with the given generators,
/// truncated to [.., cap].
inline Polynomial free_hilbert(const GradedDims& gens, unsigned k, int cap) {
  Polynomial p;
  for (const auto& [d, c] : gens.entries()) {
    p += (static_cast<std::int64_t>(c) * inverse_power_series(k, cap - d)).shifted(d);
  }
  return p.truncated(cap);
}

struct FreenessReport {
  bool free = false;
  GradedDims generators;
  std::optional<int> failing_degree;
  std::string reason;
};

/// Cap-certified freeness over the polynomial algebra generated by the
/// ambient forms `lifts` (k = lifts.size() variables): the free cover on the
/// minimal generators is a degreewise isomorphism up to the cap, and the
/// Hilbert series matches sum q^g / (1 - q^2)^k.
inline FreenessReport check_free(const GradedModule& m, const std::vector<Vector>& lifts) {
  Generators g = minimal_generators(m);
  if (g.near_cap) {
    throw Error(ErrorKind::CapTooSmall, "generators found within 2 of the degree cap " + std::to_string(m.hi()));
  }
  FreenessReport rep;
  rep.generators = g.dims;
  std::vector<int> gen_degrees;
  std::vector<Vector> images;
  for (const auto& [d, idx] : g.complement) {
    for (auto i : idx) {
      gen_degrees.push_back(d);
      Vector e(m.dim(d));
      e[i] = 1;
      images.push_back(std::move(e));
    }
  }
  const std::size_t k = lifts.size();
  // The cover only needs the variable count; its own action is never used.
  std::vector<Vector> coeff(static_cast<std::size_t>(m.ambient()), Vector(k));
  FreeModule cover(coeff, k, gen_degrees, m.lo(), m.hi());
  GradedMap f = free_module_map(cover, m, images, lifts);
  for (int d = m.lo(); d <= m.hi(); ++d) {
    const std::size_t cols = cover.module().dim(d);
    if (cols != m.dim(d)) {
      rep.failing_degree = d;
      rep.reason = "rank of free cover differs from module dimension";
      return rep;
    }
    if (cols && rank(f.at(d)) != cols) {
      rep.failing_degree = d;
      rep.reason = "free cover is not injective";
      return rep;
    }
  }
  Polynomial expected = free_hilbert(g.dims, static_cast<unsigned>(k), m.hi());
  if (!(expected == m.hilbert().truncated(m.hi()))) {
    rep.reason = "Hilbert series mismatch";
    return rep;
  }
  rep.free = true;
  return rep;
}

/// Standard coordinate forms of Q^n: the lifts for freeness over all of A.
inline std::vector<Vector> coordinate_forms(int n) {
  std::vector<Vector> out;
  for (int i = 0; i < n; ++i) {
    Vector e(static_cast<std::size_t>(n));
    e[static_cast<std::size_t>(i)] = 1;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace fanih
