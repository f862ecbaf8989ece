#pragma once

// Cellular complex C^i = sum over cones of dimension n - i of the stalks,
// with signed restriction maps as differential, and its cohomology computed
// degree by degree.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fanih/error.hpp"
#include "fanih/fan.hpp"
#include "fanih/graded.hpp"
#include "fanih/sheaf.hpp"

namespace fanih {

class CellComplex {
 public:
  CellComplex(const Sheaf& f, const Subposet& cells) : n_(f.ambient()), lo_(f.lo()), hi_(f.hi()) {
    const Fan& fan = *f.fan();
    cells_.assign(static_cast<std::size_t>(n_) + 1, {});
    for (ConeId c : cells.cones()) cells_[static_cast<std::size_t>(n_ - fan.dim(c))].push_back(c);
    for (int d = lo_; d <= hi_; ++d) {
      std::vector<Matrix> row;
      for (int i = 0; i < n_; ++i) row.push_back(differential(f, i, d));
      diff_.push_back(std::move(row));
      std::vector<std::size_t> dims;
      for (int i = 0; i <= n_; ++i) {
        std::size_t k = 0;
        for (ConeId c : cells_[static_cast<std::size_t>(i)]) k += f.stalk(c).dim(d);
        dims.push_back(k);
      }
      dims_.push_back(std::move(dims));
    }
    for (int d = lo_; d <= hi_; ++d) {
      for (int i = 0; i + 1 < n_; ++i) {
        if (!(d_at(i + 1, d) * d_at(i, d)).is_zero()) {
          throw Error(ErrorKind::SignInconsistency, "d o d is nonzero at C^" + std::to_string(i) + ", degree " +
                                                         std::to_string(d));
        }
      }
    }
  }

  int top() const noexcept { return n_; }
  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return hi_; }
  const std::vector<ConeId>& cells(int i) const { return cells_.at(static_cast<std::size_t>(i)); }

  std::size_t dim(int i, int d) const {
    if (i < 0 || i > n_) return 0;
    return dims_.at(static_cast<std::size_t>(d - lo_))[static_cast<std::size_t>(i)];
  }

  /// d^i : C^i -> C^{i+1} in degree d.
  const Matrix& d_at(int i, int d) const {
    return diff_.at(static_cast<std::size_t>(d - lo_)).at(static_cast<std::size_t>(i));
  }

 private:
  Matrix differential(const Sheaf& f, int i, int d) const {
    const Fan& fan = *f.fan();
    const auto& src = cells_[static_cast<std::size_t>(i)];
    const auto& dst = cells_[static_cast<std::size_t>(i + 1)];
    std::vector<std::size_t> src_off, dst_off;
    std::size_t cols = 0, rows = 0;
    for (ConeId c : src) {
      src_off.push_back(cols);
      cols += f.stalk(c).dim(d);
    }
    for (ConeId c : dst) {
      dst_off.push_back(rows);
      rows += f.stalk(c).dim(d);
    }
    Matrix m(rows, cols);
    for (std::size_t a = 0; a < src.size(); ++a) {
      for (std::size_t b = 0; b < dst.size(); ++b) {
        auto cover = fan.cover_index(dst[b], src[a]);
        if (!cover || f.stalk(src[a]).dim(d) == 0 || f.stalk(dst[b]).dim(d) == 0) continue;
        Matrix block = f.restriction(*cover, d);
        if (fan.cover_sign(*cover) < 0) block *= Rational(-1);
        m.set_block(dst_off[b], src_off[a], block);
      }
    }
    return m;
  }

  int n_;
  int lo_;
  int hi_;
  std::vector<std::vector<ConeId>> cells_;
  std::vector<std::vector<Matrix>> diff_;
  std::vector<std::vector<std::size_t>> dims_;
};

inline CellComplex cellular_complex(const Sheaf& f) { return CellComplex(f, whole(*f.fan())); }
inline CellComplex cellular_complex(const Sheaf& f, const Subposet& cells) { return CellComplex(f, cells); }

/// Cohomology dimensions H^i in each degree, as polynomials in q.
struct Cohomology {
  std::map<int, Polynomial> groups;

  const Polynomial& at(int i) const {
    static const Polynomial zero;
    auto it = groups.find(i);
    return it == groups.end() ? zero : it->second;
  }
};

inline Cohomology complex_cohomology(const CellComplex& c) {
  Cohomology h;
  for (int d = c.lo(); d <= c.hi(); ++d) {
    std::vector<std::size_t> ranks(static_cast<std::size_t>(c.top()) + 1, 0);
    for (int i = 0; i < c.top(); ++i) ranks[static_cast<std::size_t>(i)] = rank(c.d_at(i, d));
    for (int i = 0; i <= c.top(); ++i) {
      const std::size_t out_rank = i < c.top() ? ranks[static_cast<std::size_t>(i)] : 0;
      const std::size_t in_rank = i > 0 ? ranks[static_cast<std::size_t>(i - 1)] : 0;
      const auto k = static_cast<std::int64_t>(c.dim(i, d) - out_rank - in_rank);
      h.groups[i].add(d, k);
    }
  }
  return h;
}

/// Degreewise Euler characteristic sum_i (-1)^i dim C^i.
inline Polynomial euler_characteristic(const CellComplex& c) {
  Polynomial p;
  for (int d = c.lo(); d <= c.hi(); ++d) {
    for (int i = 0; i <= c.top(); ++i) p.add(d, (i % 2 ? -1 : 1) * static_cast<std::int64_t>(c.dim(i, d)));
  }
  return p;
}

inline Polynomial euler_characteristic(const Cohomology& h) {
  Polynomial p;
  for (const auto& [i, g] : h.groups) p += (i % 2 ? -1 : 1) * g;
  return p;
}

struct AcyclicityReport {
  bool acyclic = false;
  Polynomial h0_hilbert;
  GradedDims free_gens;
  bool free = false;
  std::optional<std::pair<int, int>> witness;  // (i, degree)
  std::string reason;

  bool pass() const { return acyclic && free; }
};

/// On a complete fan, a flabby locally free sheaf has H^i = 0 for i > 0 and
/// free global sections.  Inputs outside the category are rejected.
inline AcyclicityReport acyclicity_report(const Sheaf& f) {
  const Fan& fan = *f.fan();
  if (!fan.is_complete()) throw Error(ErrorKind::NotInCategory, "acyclicity check needs a complete fan");
  CheckResult flabby = is_flabby(f);
  if (!flabby.ok) {
    throw Error(ErrorKind::NotInCategory, "sheaf is not flabby at cone " + std::to_string(flabby.witness->cone) +
                                              ", degree " + std::to_string(flabby.witness->degree));
  }
  LocalFreeness lf = is_locally_free(f);
  if (!lf.free) {
    throw Error(ErrorKind::NotInCategory, "stalk at cone " + std::to_string(lf.witness->cone) + " is not free");
  }
  AcyclicityReport rep;
  Cohomology h = complex_cohomology(cellular_complex(f));
  rep.acyclic = true;
  for (const auto& [i, g] : h.groups) {
    if (i != 0 && !g.is_zero()) {
      rep.acyclic = false;
      rep.witness = std::make_pair(i, g.min_exponent());
      rep.reason = "higher cohomology does not vanish";
      break;
    }
  }
  rep.h0_hilbert = h.at(0);
  Sections gamma = sections(f, whole(fan));
  if (!(gamma.module().hilbert() == rep.h0_hilbert)) {
    rep.acyclic = false;
    rep.reason = "H^0 differs from global sections";
  }
  FreenessReport fr = check_free(gamma.module(), coordinate_forms(fan.ambient_dim()));
  rep.free = fr.free;
  rep.free_gens = fr.generators;
  if (!fr.free && rep.reason.empty()) {
    rep.reason = "global sections are not free: " + fr.reason;
    if (fr.failing_degree) rep.witness = std::make_pair(0, *fr.failing_degree);
  }
  return rep;
}

}  // namespace fanih
