#include "eqw/filtration.hpp"

#include <algorithm>
#include <sstream>

#include "eqw/error.hpp"

namespace eqw {

FilteredComplex::FilteredComplex(Complex complex, int fmin, int fmax,
                                 std::vector<std::vector<Subspace>> levels)
    : complex_(std::move(complex)), fmin_(fmin), fmax_(fmax), levels_(std::move(levels)) {
  require(fmin_ <= fmax_, "filtration: fmin > fmax");
  require(levels_.size() == static_cast<std::size_t>(fmax_ - fmin_ + 1),
          "filtration: wrong number of levels");
  const int lo = complex_.lo(), hi = complex_.hi();
  for (const auto& lv : levels_) {
    require(lv.size() == static_cast<std::size_t>(std::max(0, hi - lo + 1)),
            "filtration: wrong number of degrees in a level");
    for (int k = lo; k <= hi; ++k)
      require(lv[k - lo].ambient_dim() == complex_.dim(k), "filtration: level has wrong ambient");
  }
  const bool cochain = variance() == Variance::cochain;
  for (int k = lo; k <= hi; ++k) {
    const Subspace& edge = cochain ? levels_.front()[k - lo] : levels_.back()[k - lo];
    require(edge.is_full(), "filtration: extreme level is not the whole complex");
    for (int i = fmin_; i < fmax_; ++i) {
      const Subspace& smaller = cochain ? level(i + 1, k) : level(i, k);
      const Subspace& larger = cochain ? level(i, k) : level(i + 1, k);
      require(larger.contains(smaller), "filtration: levels are not nested");
    }
    for (int i = fmin_; i <= fmax_; ++i)
      require(level(i, k + complex_.step()).contains(image(level(i, k), complex_.d(k))),
              "filtration: levels are not subcomplexes");
  }
}

Subspace FilteredComplex::level(int index, int k) const {
  const std::size_t n = complex_.dim(k);
  if (k < complex_.lo() || k > complex_.hi()) return Subspace::zero(n);
  if (variance() == Variance::cochain) {
    if (index <= fmin_) return Subspace::full(n);
    if (index > fmax_) return Subspace::zero(n);
  } else {
    if (index < fmin_) return Subspace::zero(n);
    if (index >= fmax_) return Subspace::full(n);
  }
  return levels_[static_cast<std::size_t>(index - fmin_)][static_cast<std::size_t>(k - complex_.lo())];
}

namespace {

std::vector<std::vector<Subspace>> build_levels(const Complex& c, int fmin, int fmax,
                                                const auto& fn) {
  std::vector<std::vector<Subspace>> levels;
  for (int i = fmin; i <= fmax; ++i) {
    std::vector<Subspace> row;
    for (int k = c.lo(); k <= c.hi(); ++k) row.push_back(fn(i, k));
    levels.push_back(std::move(row));
  }
  return levels;
}

}  // namespace

FilteredComplex trivial_filtration(const Complex& c) {
  return FilteredComplex(c, 0, 0, build_levels(c, 0, 0, [&](int, int k) {
                           return Subspace::full(c.dim(k));
                         }));
}

FilteredComplex canonical_filtration(const Complex& c) {
  if (c.empty()) return trivial_filtration(c);
  const int fmin = -c.hi(), fmax = -c.lo();
  std::vector<Subspace> z;
  for (int k = c.lo(); k <= c.hi(); ++k) z.push_back(cycles(c, k));
  const bool cochain = c.variance() == Variance::cochain;
  return FilteredComplex(c, fmin, fmax, build_levels(c, fmin, fmax, [&](int i, int k) {
                           const int edge = -i;
                           if (k == edge) return z[static_cast<std::size_t>(k - c.lo())];
                           const bool full = cochain ? k < edge : k > edge;
                           return full ? Subspace::full(c.dim(k)) : Subspace::zero(c.dim(k));
                         }));
}

FilteredComplex dual_filtration(const FilteredComplex& f) {
  const Complex d = dualize(f.complex());
  // cochain output: G^p = ann(F_{p-1}); chain output: G_s = ann(F^{s+1})
  const int shift = f.variance() == Variance::chain ? -1 : 1;
  return FilteredComplex(d, f.fmin(), f.fmax(), build_levels(d, f.fmin(), f.fmax(), [&](int i, int k) {
                           return annihilator(f.level(i + shift, k));
                         }));
}

FilteredComplex tensor_filtered(const FilteredComplex& a, const FilteredComplex& b) {
  const Complex& ca = a.complex();
  const Complex& cb = b.complex();
  const Complex t = tensor(ca, cb);
  const int fmin = a.fmin() + b.fmin(), fmax = a.fmax() + b.fmax();
  return FilteredComplex(t, fmin, fmax, build_levels(t, fmin, fmax, [&](int l, int n) {
                           std::vector<BitMatrix> rows;
                           for (int i = ca.lo(); i <= ca.hi(); ++i) {
                             const int j = n - i;
                             if (j < cb.lo() || j > cb.hi() || ca.dim(i) * cb.dim(j) == 0) continue;
                             const std::size_t off = tensor_block_offset(ca, cb, n, i);
                             for (int x = a.fmin(); x <= a.fmax(); ++x) {
                               const BitMatrix k = kron(a.level(x, i).basis(), b.level(l - x, j).basis());
                               if (k.rows() == 0) continue;
                               BitMatrix placed(k.rows(), t.dim(n));
                               placed.set_block(0, off, k);
                               rows.push_back(std::move(placed));
                             }
                           }
                           if (rows.empty()) return Subspace::zero(t.dim(n));
                           return Subspace(vstack(rows));
                         }));
}

FilteredComplex coordinate_filtration(const Complex& c, const std::vector<std::vector<int>>& index,
                                      int fmin, int fmax) {
  require(index.size() == static_cast<std::size_t>(std::max(0, c.hi() - c.lo() + 1)),
          "coordinate filtration: wrong number of degrees");
  const bool cochain = c.variance() == Variance::cochain;
  return FilteredComplex(c, fmin, fmax, build_levels(c, fmin, fmax, [&](int l, int k) {
                           const auto& idx = index[static_cast<std::size_t>(k - c.lo())];
                           require(idx.size() == c.dim(k), "coordinate filtration: wrong size");
                           std::vector<BitVector> rows;
                           for (std::size_t i = 0; i < idx.size(); ++i)
                             if (cochain ? idx[i] >= l : idx[i] <= l)
                               rows.push_back(BitVector::unit(idx.size(), i));
                           return Subspace(BitMatrix::from_rows(rows, idx.size()));
                         }));
}

namespace {

// The filtered complex in the internal cohomological convention.
struct View {
  const FilteredComplex& f;
  bool chain;
  int lo, hi, amin, amax;

  explicit View(const FilteredComplex& f_)
      : f(f_), chain(f_.variance() == Variance::chain) {
    const Complex& c = f.complex();
    if (c.empty()) {
      lo = 0;
      hi = -1;
    } else {
      lo = chain ? -c.hi() : c.lo();
      hi = chain ? -c.lo() : c.hi();
    }
    amin = chain ? -f.fmax() : f.fmin();
    amax = chain ? -f.fmin() : f.fmax();
  }
  int orig(int k) const { return chain ? -k : k; }
  std::size_t dim(int k) const { return f.complex().dim(orig(k)); }
  // internal degree k -> k + 1
  const BitMatrix& d(int k) const { return f.complex().d(orig(k)); }
  Subspace level(int a, int k) const { return f.level(chain ? -a : a, orig(k)); }
};

}  // namespace

SpectralSequence::SpectralSequence(const FilteredComplex& f, int r_max) {
  auto data = std::make_shared<Data>();
  data->filtered = f;
  const View v(data->filtered);
  data->amin = v.amin;
  data->amax = v.amax;
  data->lo = v.lo;
  data->hi = v.hi;
  const int width = v.amax - v.amin;
  require(r_max >= 1 || r_max == kAuto, "spectral sequence: r_max must be at least 1");
  const int last = r_max == kAuto ? width + 2 : r_max;
  const int na = width + 2;  // levels amin .. amax + 1
  const int nk = std::max(0, v.hi - v.lo + 1);
  auto clamp = [&](int a) { return std::clamp(a, v.amin, v.amax + 1) - v.amin; };

  // lev, preimages of levels, images of levels, per (level, degree)
  std::vector<std::vector<Subspace>> lev(na), pre(na), img(na);
  for (int i = 0; i < na; ++i)
    for (int k = v.lo; k <= v.hi; ++k) lev[i].push_back(v.level(v.amin + i, k));
  auto level_at = [&](int a, int k) -> Subspace {
    if (k < v.lo || k > v.hi) return Subspace::zero(v.dim(k));
    return lev[clamp(a)][k - v.lo];
  };
  for (int i = 0; i < na; ++i)
    for (int k = v.lo; k <= v.hi; ++k) {
      pre[i].push_back(preimage(v.d(k), level_at(v.amin + i, k + 1)));
      img[i].push_back(image(level_at(v.amin + i, k - 1), v.d(k - 1)));
    }
  auto pre_at = [&](int a, int k) -> const Subspace& { return pre[clamp(a)][k - v.lo]; };
  auto img_at = [&](int a, int k) -> const Subspace& { return img[clamp(a)][k - v.lo]; };

  // Z_r^{a,k} for a in [amin, amax + 1]; Z_{-1} = F^a.
  auto z_page = [&](int r) {
    std::vector<std::vector<Subspace>> z(na);
    for (int i = 0; i < na; ++i)
      for (int k = v.lo; k <= v.hi; ++k)
        z[i].push_back(r < 0 ? lev[i][k - v.lo] : intersection(lev[i][k - v.lo], pre_at(v.amin + i + r, k)));
    return z;
  };
  std::vector<std::vector<Subspace>> z_prev = z_page(-1);
  for (int r = 0; r <= last; ++r) {
    auto z_cur = z_page(r);
    std::map<SSKey, Subquotient> page;
    for (int a = v.amin; a <= v.amax; ++a)
      for (int k = v.lo; k <= v.hi; ++k) {
        const Subspace& lv = lev[a - v.amin][k - v.lo];
        const Subspace b = intersection(lv, img_at(a - r + 1, k));
        const Subspace denom = sum(z_prev[a + 1 - v.amin][k - v.lo], b);
        page.emplace(SSKey{a, k}, Subquotient(z_cur[a - v.amin][k - v.lo], denom));
      }
    data->pages.push_back(std::move(page));
    z_prev = std::move(z_cur);
  }

  // E_infinity and the abutment filtration
  data->omega.assign(nk, std::vector<std::size_t>(na, 0));
  std::vector<std::vector<Subspace>> zi(na), bi(na);
  for (int k = v.lo; k <= v.hi; ++k) {
    const Subspace ker = kernel(v.d(k));
    const Subspace im = image(v.d(k - 1));
    data->total.push_back(ker.dim() - im.dim());
    for (int i = 0; i < na; ++i) {
      zi[i].push_back(intersection(lev[i][k - v.lo], ker));
      bi[i].push_back(intersection(lev[i][k - v.lo], im));
      data->omega[k - v.lo][i] = zi[i].back().dim() - bi[i].back().dim();
    }
  }
  for (int a = v.amin; a <= v.amax; ++a)
    for (int k = v.lo; k <= v.hi; ++k) {
      const int i = a - v.amin;
      data->infinity.emplace(SSKey{a, k},
                             Subquotient(zi[i][k - v.lo], sum(zi[i + 1][k - v.lo], bi[i][k - v.lo])));
    }

  // differentials
  for (int r = 0; r <= last; ++r) {
    std::map<SSKey, BitMatrix> diffs;
    for (const auto& [key, src] : data->pages[r]) {
      const SSKey t{key.a + r, key.k + 1};
      auto it = data->pages[r].find(t);
      if (it == data->pages[r].end() || src.dim() == 0 || it->second.dim() == 0) continue;
      const BitMatrix images = src.section() * v.d(key.k);
      BitMatrix m(src.dim(), it->second.dim());
      for (std::size_t i = 0; i < src.dim(); ++i) {
        const BitVector y = images.row(i);
        require(it->second.numerator().contains(y), "spectral sequence: d_r leaves Z_r");
        m.set_row(i, it->second.coordinates(y));
      }
      diffs.emplace(key, std::move(m));
    }
    data->differentials.push_back(std::move(diffs));
  }
  data_ = std::move(data);
}

Variance SpectralSequence::variance() const { return data_->filtered.variance(); }

const Subquotient& SpectralSequence::entry(int r, SSKey key) const {
  static const Subquotient empty;
  const auto& m = r == kInfinity ? data_->infinity : data_->pages.at(static_cast<std::size_t>(r));
  auto it = m.find(key);
  return it == m.end() ? empty : it->second;
}

BitMatrix SpectralSequence::differential(int r, SSKey key) const {
  const auto& m = data_->differentials.at(static_cast<std::size_t>(r));
  auto it = m.find(key);
  if (it != m.end()) return it->second;
  return BitMatrix(dim(r, key), dim(r, target(r, key)));
}

std::size_t SpectralSequence::total_dim(int k) const {
  if (k < data_->lo || k > data_->hi) return 0;
  return data_->total[static_cast<std::size_t>(k - data_->lo)];
}

std::size_t SpectralSequence::omega_dim(int level, int k) const {
  if (k < data_->lo || k > data_->hi) return 0;
  const int i = std::clamp(level, data_->amin, data_->amax + 1) - data_->amin;
  return data_->omega[static_cast<std::size_t>(k - data_->lo)][static_cast<std::size_t>(i)];
}

std::size_t SpectralSequence::recursion_dim(int r, SSKey key) const {
  const SSKey from{key.a - r, key.k - 1};
  return dim(r, key) - rank(differential(r, key)) - rank(differential(r, from));
}

SpectralSequence SpectralSequence::relabeled(SSLabels labels) const {
  SpectralSequence s = *this;
  s.labels_ = labels;
  return s;
}

namespace {

int page_shift(SSLabels l) {
  return l == SSLabels::weight_cohomological || l == SSLabels::weight_homological ? 1 : 0;
}

}  // namespace

int SpectralSequence::first_label_page() const { return page_shift(labels_); }
int SpectralSequence::last_label_page() const { return last_page() + page_shift(labels_); }

std::pair<int, SSKey> SpectralSequence::to_internal(int page, int p, int q) const {
  const int r = page == kInfinity ? kInfinity : page - page_shift(labels_);
  switch (labels_) {
    case SSLabels::cohomological: return {r, {p, p + q}};
    case SSLabels::homological: return {r, {-p, -(p + q)}};
    case SSLabels::weight_cohomological: return {r, {-q, p + q}};
    case SSLabels::weight_homological: return {r, {q, -(p + q)}};
    case SSLabels::transposed: return {r, {q, p + q}};
  }
  return {r, {p, q}};
}

std::pair<int, int> SpectralSequence::to_label(SSKey key) const {
  switch (labels_) {
    case SSLabels::cohomological: return {key.a, key.k - key.a};
    case SSLabels::homological: return {-key.a, key.a - key.k};
    case SSLabels::weight_cohomological: return {key.k + key.a, -key.a};
    case SSLabels::weight_homological: return {-key.k - key.a, key.a};
    case SSLabels::transposed: return {key.k - key.a, key.a};
  }
  return {key.a, key.k};
}

std::size_t SpectralSequence::label_dim(int page, int p, int q) const {
  const auto [r, key] = to_internal(page, p, q);
  if (r != kInfinity && (r < 0 || r > last_page())) throw Error("spectral sequence: page out of range");
  return dim(r, key);
}

std::vector<LabeledEntry> SpectralSequence::labeled_page(int page, int k_lo, int k_hi) const {
  const int r = page == kInfinity ? kInfinity : page - page_shift(labels_);
  if (r != kInfinity && (r < 0 || r > last_page())) throw Error("spectral sequence: page out of range");
  std::vector<LabeledEntry> out;
  for (int a = amin(); a <= amax(); ++a)
    for (int k = lo(); k <= hi(); ++k) {
      const int total = original_degree(k);
      if (total < k_lo || total > k_hi) continue;
      const auto [p, q] = to_label({a, k});
      LabeledEntry e{p, q, dim(r, {a, k}), 0};
      if (r != kInfinity && e.dim > 0) e.d_rank = rank(differential(r, {a, k}));
      out.push_back(e);
    }
  std::sort(out.begin(), out.end(), [](const LabeledEntry& x, const LabeledEntry& y) {
    return std::pair(x.p, x.q) < std::pair(y.p, y.q);
  });
  return out;
}

std::string check_spectral_sequence(const SpectralSequence& ss) {
  std::ostringstream err;
  auto where = [&](int r, SSKey key) {
    err << " at r=" << r << " a=" << key.a << " k=" << key.k << "\n";
  };
  for (int r = 0; r <= ss.last_page(); ++r)
    for (int a = ss.amin(); a <= ss.amax(); ++a)
      for (int k = ss.lo(); k <= ss.hi(); ++k) {
        const SSKey key{a, k};
        const BitMatrix dd = ss.differential(r, key) * ss.differential(r, ss.target(r, key));
        if (!dd.is_zero()) {
          err << "d_r d_r != 0";
          where(r, key);
        }
        if (r < ss.last_page() && ss.recursion_dim(r, key) != ss.dim(r + 1, key)) {
          err << "page recursion fails";
          where(r, key);
        }
      }
  const int width = ss.amax() - ss.amin();
  if (ss.last_page() >= width + 1)
    for (int a = ss.amin(); a <= ss.amax(); ++a)
      for (int k = ss.lo(); k <= ss.hi(); ++k)
        if (ss.dim(ss.last_page(), {a, k}) != ss.dim(SpectralSequence::kInfinity, {a, k})) {
          err << "last page differs from E_infinity";
          where(ss.last_page(), {a, k});
        }
  for (int k = ss.lo(); k <= ss.hi(); ++k) {
    std::size_t total = 0;
    for (int a = ss.amin(); a <= ss.amax(); ++a) {
      const std::size_t e = ss.dim(SpectralSequence::kInfinity, {a, k});
      total += e;
      if (ss.omega_dim(a, k) - ss.omega_dim(a + 1, k) != e) {
        err << "graded abutment differs from E_infinity";
        where(SpectralSequence::kInfinity, {a, k});
      }
    }
    if (total != ss.total_dim(k) || ss.omega_dim(ss.amin(), k) != total) {
      err << "E_infinity does not sum to the total cohomology";
      where(SpectralSequence::kInfinity, {0, k});
    }
  }
  return err.str();
}

bool is_filtered(const ComplexMap& f, const FilteredComplex& source, const FilteredComplex& target) {
  require(source.variance() == target.variance(), "is_filtered: variance mismatch");
  const Complex& s = source.complex();
  const Complex& t = target.complex();
  const int lo = std::min(source.fmin(), target.fmin()) - 1;
  const int hi = std::max(source.fmax(), target.fmax()) + 1;
  for (int k = s.lo(); k <= s.hi(); ++k) {
    const BitMatrix m = f.at(k, s, t);
    for (int i = lo; i <= hi; ++i)
      if (!target.level(i, k).contains(image(source.level(i, k), m))) return false;
  }
  return true;
}

BitMatrix page_map(const SpectralSequence& source, const SpectralSequence& target,
                   const ComplexMap& f, int r, SSKey key) {
  const Subquotient& a = source.entry(r, key);
  const Subquotient& b = target.entry(r, key);
  BitMatrix m(a.dim(), b.dim());
  if (a.dim() == 0 || b.dim() == 0) return m;
  const int k = source.original_degree(key.k);
  const BitMatrix images =
      a.section() * f.at(k, source.filtered().complex(), target.filtered().complex());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const BitVector y = images.row(i);
    require(b.numerator().contains(y), "page_map: map is not filtered");
    m.set_row(i, b.coordinates(y));
  }
  return m;
}

bool is_filtered_qis(const ComplexMap& f, const FilteredComplex& source,
                     const FilteredComplex& target) {
  require(is_filtered(f, source, target), "is_filtered_qis: map is not filtered");
  const SpectralSequence a(source, 1), b(target, 1);
  for (int x = std::min(a.amin(), b.amin()); x <= std::max(a.amax(), b.amax()); ++x)
    for (int k = std::min(a.lo(), b.lo()); k <= std::max(a.hi(), b.hi()); ++k) {
      const BitMatrix m = page_map(a, b, f, 1, {x, k});
      if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
    }
  return true;
}

}  // namespace eqw
