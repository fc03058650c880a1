#include "eqw/equivariant.hpp"

#include <algorithm>

#include "eqw/error.hpp"

namespace eqw {

LComplex::LComplex(GComplex source, FreeResolution resolution, int window)
    : source_(std::move(source)), resolution_(std::move(resolution)), window_(window) {
  require(source_.group() == resolution_.group(), "L: resolution is over a different group");
  require(window >= 0, "L: window must be non-negative");
  k_ = variance() == Variance::chain ? negate_degrees(source_) : source_;
  const Complex& k = k_.complex();
  const int n = resolution_.depth();
  if (k.empty()) {
    cochain_ = Complex::zero(Variance::cochain);
    total_ = Complex::zero(variance());
    top_ = -1;
    return;
  }
  const int lo = k.lo(), hi = k.hi();
  top_ = std::min(window + 1, n + hi);
  if (top_ < lo) {
    cochain_ = Complex::zero(Variance::cochain);
    total_ = Complex::zero(variance());
    return;
  }
  std::vector<std::size_t> dims;
  for (int m = lo; m <= top_; ++m) {
    std::vector<LBlock> row;
    std::size_t off = 0;
    for (int p = 0; p <= n; ++p) {
      const int q = m - p;
      if (q < lo || q > hi) continue;
      LBlock b{p, q, off, resolution_.rank(p), k.dim(q)};
      off += b.gens * b.width;
      row.push_back(b);
    }
    dims.push_back(off);
    blocks_.push_back(std::move(row));
  }
  // action matrices per degree
  std::vector<std::vector<BitMatrix>> act(static_cast<std::size_t>(hi - lo + 1));
  for (int q = lo; q <= hi; ++q)
    for (int g = 0; g < k_.group().order(); ++g) act[q - lo].push_back(k_.act(g, q));
  auto find = [&](int m, int p) -> const LBlock* {
    if (m < lo || m > top_) return nullptr;
    for (const auto& b : blocks_[m - lo])
      if (b.p == p) return &b;
    return nullptr;
  };
  std::vector<BitMatrix> diffs;
  for (int m = lo; m <= top_; ++m) {
    BitMatrix d(dims[m - lo], m < top_ ? dims[m + 1 - lo] : 0);
    if (m < top_)
      for (const auto& b : blocks_[m - lo]) {
        if (b.width == 0) continue;
        if (const LBlock* t = find(m + 1, b.p + 1)) {
          for (std::size_t j = 0; j < t->gens; ++j)
            for (const auto& term : resolution_.boundary_terms(b.p + 1, static_cast<int>(j)))
              d.add_block(b.offset + static_cast<std::size_t>(term.gen) * b.width, t->offset + j * b.width,
                          act[b.q - lo][term.g]);
        }
        if (const LBlock* t = find(m + 1, b.p); t && t->width > 0) {
          const BitMatrix& dk = k.d(b.q);
          for (std::size_t i = 0; i < b.gens; ++i)
            d.add_block(b.offset + i * b.width, t->offset + i * t->width, dk);
        }
      }
    diffs.push_back(std::move(d));
  }
  cochain_ = Complex(Variance::cochain, lo, std::move(dims), std::move(diffs));
  total_ = variance() == Variance::chain ? negate_degrees(cochain_) : cochain_;
}

std::vector<LBlock> LComplex::blocks(int k) const {
  const int m = internal_degree(k);
  if (blocks_.empty() || m < k_.complex().lo() || m > top_) return {};
  std::vector<LBlock> out = blocks_[m - k_.complex().lo()];
  if (variance() == Variance::chain)
    for (auto& b : out) b.q = -b.q;
  return out;
}

std::optional<LBlock> LComplex::block(int p, int q) const {
  for (const auto& b : blocks(total_degree(p, q)))
    if (b.p == p) return b;
  return std::nullopt;
}

bool LComplex::certified(int k) const {
  const Complex& c = k_.complex();
  if (c.empty()) return true;
  const int m = internal_degree(k);
  if (m > window_ || m > top_) return false;
  if (m < c.lo()) return true;  // nothing there, at any depth
  return (m - c.lo()) + (c.hi() - c.lo()) + 2 <= resolution_.depth();
}

std::vector<int> LComplex::certified_degrees() const {
  std::vector<int> out;
  const Complex& c = k_.complex();
  for (int m = c.lo(); m <= std::min(top_, window_); ++m)
    if (certified(variance() == Variance::chain ? -m : m)) out.push_back(variance() == Variance::chain ? -m : m);
  std::sort(out.begin(), out.end());
  return out;
}

Subspace LComplex::values_in(int k, const std::function<Subspace(int q)>& level) const {
  const std::size_t n = total_.dim(k);
  const auto bs = blocks(k);
  std::vector<Subspace> levels;
  std::size_t rows = 0;
  for (const auto& b : bs) {
    levels.push_back(level(b.q));
    require(levels.back().ambient_dim() == b.width, "L: level has the wrong ambient dimension");
    rows += levels.back().dim() * b.gens;
  }
  BitMatrix m(rows, n);
  std::size_t r = 0;
  for (std::size_t i = 0; i < bs.size(); ++i)
    for (std::size_t gen = 0; gen < bs[i].gens; ++gen) {
      m.set_block(r, bs[i].offset + gen * bs[i].width, levels[i].basis());
      r += levels[i].dim();
    }
  return Subspace(m);
}

BitVector LComplex::embed(int p, int q, int gen, const BitVector& v) const {
  const auto b = block(p, q);
  require(b.has_value(), "L: no block (" + std::to_string(p) + ", " + std::to_string(q) + ")");
  require(v.size() == b->width && gen >= 0 && static_cast<std::size_t>(gen) < b->gens, "L: bad value");
  BitVector x(total_.dim(total_degree(p, q)));
  const std::size_t off = b->offset + static_cast<std::size_t>(gen) * b->width;
  for (std::size_t c = 0; c < v.size(); ++c)
    if (v.get(c)) x.set(off + c);
  return x;
}

BitVector LComplex::value(const BitVector& x, int p, int q, int gen) const {
  const auto b = block(p, q);
  require(b.has_value(), "L: no block (" + std::to_string(p) + ", " + std::to_string(q) + ")");
  BitVector v(b->width);
  const std::size_t off = b->offset + static_cast<std::size_t>(gen) * b->width;
  for (std::size_t c = 0; c < v.size(); ++c)
    if (x.get(off + c)) v.set(c);
  return v;
}

int required_depth(const GComplex& source, int window) {
  const Complex& c = source.complex();
  if (c.empty()) return 0;
  const int lo = source.variance() == Variance::chain ? -c.hi() : c.lo();
  return std::max(0, (window - lo) + (c.hi() - c.lo()) + 2);
}

std::vector<DegreeDim> equivariant_cohomology(const LComplex& l) {
  std::vector<DegreeDim> out;
  const Complex& t = l.total();
  for (int k = t.lo(); k <= t.hi(); ++k) {
    const int m = l.internal_degree(k);
    if (m > l.window()) continue;
    out.push_back({k, homology_dim(t, k), l.certified(k)});
  }
  return out;
}

FilteredComplex hs_filtration(const LComplex& l, HSKind which) {
  require(l.variance() == Variance::cochain, "hochschild_serre: cochain sources only");
  const Complex& t = l.total();
  if (t.empty()) return trivial_filtration(t);
  std::vector<std::vector<int>> index;
  for (int k = t.lo(); k <= t.hi(); ++k) {
    std::vector<int> idx(t.dim(k));
    for (const auto& b : l.blocks(k))
      std::fill(idx.begin() + static_cast<std::ptrdiff_t>(b.offset),
                idx.begin() + static_cast<std::ptrdiff_t>(b.offset + b.gens * b.width),
                which == HSKind::first ? b.p : b.q);
    index.push_back(std::move(idx));
  }
  const Complex& k = l.source().complex();
  if (which == HSKind::first) return coordinate_filtration(t, index, 0, std::max(0, l.resolution().depth()));
  return coordinate_filtration(t, index, k.lo(), k.hi());
}

SpectralSequence hochschild_serre(const LComplex& l, HSKind which, int r_max) {
  return SpectralSequence(hs_filtration(l, which), r_max)
      .relabeled(which == HSKind::first ? SSLabels::cohomological : SSLabels::transposed);
}

namespace {

void require_same_shape(const Complex& a, const Complex& b, const std::string& what) {
  bool same = a.variance() == b.variance() && a.lo() == b.lo() && a.hi() == b.hi();
  for (int k = a.lo(); same && k <= a.hi(); ++k) same = a.dim(k) == b.dim(k);
  require(same, what + ": complexes differ");
}

}  // namespace

FilteredComplex induced_filtration(const LComplex& l, const FilteredComplex& f) {
  const GComplex& x = l.source();
  require_same_shape(f.complex(), x.complex(), "induced filtration");
  for (int i = f.fmin(); i <= f.fmax(); ++i)
    for (int q = x.complex().lo(); q <= x.complex().hi(); ++q)
      require(x.is_stable(f.level(i, q), q),
              "induced filtration: level " + std::to_string(i) + " in degree " + std::to_string(q) +
                  " is not G-stable");
  const Complex& t = l.total();
  std::vector<std::vector<Subspace>> levels;
  for (int i = f.fmin(); i <= f.fmax(); ++i) {
    std::vector<Subspace> row;
    for (int k = t.lo(); k <= t.hi(); ++k)
      row.push_back(l.values_in(k, [&](int q) { return f.level(i, q); }));
    levels.push_back(std::move(row));
  }
  return FilteredComplex(t, f.fmin(), f.fmax(), std::move(levels));
}

SpectralSequence equivariant_weight_ss(const LComplex& l, const FilteredComplex& f, int r_max) {
  return SpectralSequence(induced_filtration(l, f), r_max)
      .relabeled(l.variance() == Variance::cochain ? SSLabels::weight_cohomological
                                                   : SSLabels::weight_homological);
}

GComplex graded_piece(const GComplex& x, const FilteredComplex& f, int a) {
  const Complex& c = x.complex();
  require_same_shape(f.complex(), c, "graded piece");
  if (c.empty()) return x;
  const int below = f.variance() == Variance::cochain ? a + 1 : a - 1;
  std::vector<Subquotient> sq;
  for (int k = c.lo(); k <= c.hi(); ++k) sq.emplace_back(f.level(a, k), f.level(below, k));
  auto at = [&](int k) -> const Subquotient& { return sq[static_cast<std::size_t>(k - c.lo())]; };
  auto project = [](const BitMatrix& rows, const Subquotient& target) {
    BitMatrix m(rows.rows(), target.dim());
    for (std::size_t i = 0; i < rows.rows(); ++i) m.set_row(i, target.coordinates(rows.row(i)));
    return m;
  };
  std::vector<std::size_t> dims;
  std::vector<BitMatrix> diffs;
  for (int k = c.lo(); k <= c.hi(); ++k) {
    dims.push_back(at(k).dim());
    const int t = k + c.step();
    if (t < c.lo() || t > c.hi())
      diffs.emplace_back(at(k).dim(), 0);
    else
      diffs.push_back(project(at(k).section() * c.d(k), at(t)));
  }
  const Complex gr(c.variance(), c.lo(), std::move(dims), std::move(diffs));
  std::vector<ComplexMap> action;
  for (int g = 0; g < x.group().order(); ++g) {
    ComplexMap m;
    m.lo = c.lo();
    for (int k = c.lo(); k <= c.hi(); ++k) m.parts.push_back(project(at(k).section() * x.act(g, k), at(k)));
    action.push_back(std::move(m));
  }
  return GComplex(gr, x.group(), std::move(action));
}

GComplex weight_row(const GComplex& x, const FilteredComplex& f, int q) {
  return shift_degrees(graded_piece(x, f, -q), -q);
}

SpectralSequence auxiliary_ss(const GComplex& x, const FilteredComplex& f, const FreeResolution& res,
                              int q, HSKind which, int window) {
  return hochschild_serre(LComplex(weight_row(x, f, q), res, window), which);
}

InvariantFiltration invariant_filtration(const GComplex& x, const FilteredComplex& f) {
  require_same_shape(f.complex(), x.complex(), "invariant filtration");
  InvariantFiltration out{fixed_subcomplex(x), {}};
  const Complex& c = out.fixed.complex;
  if (c.empty()) {
    out.filtered = trivial_filtration(c);
    return out;
  }
  std::vector<Subspace> fixed;
  for (int k = c.lo(); k <= c.hi(); ++k) fixed.emplace_back(out.fixed.inclusion[k - c.lo()]);
  std::vector<std::vector<Subspace>> levels;
  for (int i = f.fmin(); i <= f.fmax(); ++i) {
    std::vector<Subspace> row;
    for (int k = c.lo(); k <= c.hi(); ++k) {
      const Subspace& inv = fixed[k - c.lo()];
      const Subspace meet = intersection(f.level(i, k), inv);
      BitMatrix coords(meet.dim(), inv.dim());
      for (std::size_t r = 0; r < meet.dim(); ++r) coords.set_row(r, inv.coordinates(meet.basis().row(r)));
      row.emplace_back(coords);
    }
    levels.push_back(std::move(row));
  }
  out.filtered = FilteredComplex(c, f.fmin(), f.fmax(), std::move(levels));
  return out;
}

namespace {

bool same_resolution(const FreeResolution& a, const FreeResolution& b) {
  if (!(a.group() == b.group()) || a.depth() != b.depth()) return false;
  for (int p = 0; p <= a.depth(); ++p) {
    if (a.rank(p) != b.rank(p)) return false;
    for (int i = 0; p > 0 && i < static_cast<int>(a.rank(p)); ++i)
      if (a.boundary_terms(p, i) != b.boundary_terms(p, i)) return false;
  }
  return true;
}

// Assembles a map between internal totals block by block and converts it to
// public degrees.
ComplexMap assemble(const LComplex& a, const LComplex& b,
                    const std::function<void(BitMatrix&, const LBlock&, const LBlock&)>& fill) {
  const Complex& s = a.internal_total();
  const Complex& t = b.internal_total();
  ComplexMap m;
  m.lo = s.lo();
  for (int k = s.lo(); k <= s.hi(); ++k) {
    BitMatrix part(s.dim(k), t.dim(k));
    const int pub = a.variance() == Variance::chain ? -k : k;
    const auto bt = b.blocks(pub);
    for (auto sb : a.blocks(pub))
      for (auto tb : bt)
        if (sb.p == tb.p) fill(part, sb, tb);
    m.parts.push_back(std::move(part));
  }
  return a.variance() == Variance::chain ? negate_degrees(m) : m;
}

}  // namespace

ComplexMap l_map(const ComplexMap& f, const LComplex& a, const LComplex& b) {
  require(a.variance() == b.variance(), "l_map: variance mismatch");
  require(same_resolution(a.resolution(), b.resolution()), "l_map: different resolutions");
  require(check_equivariant(f, a.source(), b.source()), "l_map: map is not equivariant");
  const Complex& sa = a.source().complex();
  const Complex& sb = b.source().complex();
  return assemble(a, b, [&](BitMatrix& part, const LBlock& x, const LBlock& y) {
    const BitMatrix fq = f.at(x.q, sa, sb);
    for (std::size_t i = 0; i < x.gens; ++i) part.set_block(x.offset + i * x.width, y.offset + i * y.width, fq);
  });
}

ComplexMap l_restriction(const ResolutionMap& tau, const LComplex& over_target,
                         const LComplex& over_source) {
  const GroupHom& phi = tau.phi;
  require(over_target.source().group() == phi.target, "l_restriction: target group mismatch");
  require(over_source.source().group() == phi.source, "l_restriction: source group mismatch");
  require(over_target.variance() == over_source.variance(), "l_restriction: variance mismatch");
  const GComplex& kt = over_target.source();
  const GComplex& ks = over_source.source();
  require_same_shape(kt.complex(), ks.complex(), "l_restriction");
  for (int h = 0; h < phi.source.order(); ++h)
    for (int q = ks.complex().lo(); q <= ks.complex().hi(); ++q)
      require(ks.act(h, q) == kt.act(phi(h), q), "l_restriction: source is not the restricted complex");
  const int order = phi.target.order();
  return assemble(over_target, over_source, [&](BitMatrix& part, const LBlock& x, const LBlock& y) {
    if (x.p > tau.depth() || x.width == 0) return;
    std::vector<BitMatrix> act;
    for (int g = 0; g < order; ++g) act.push_back(kt.act(g, x.q));
    for (std::size_t j = 0; j < y.gens; ++j) {
      const BitVector& v = tau.images[x.p][j];
      for (std::size_t idx = v.first_set(); idx < v.size(); ++idx) {
        if (!v.get(idx)) continue;
        const std::size_t i = idx / static_cast<std::size_t>(order);
        const int g = static_cast<int>(idx % static_cast<std::size_t>(order));
        part.add_block(x.offset + i * x.width, y.offset + j * y.width, act[g]);
      }
    }
  });
}

}  // namespace eqw
