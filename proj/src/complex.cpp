#include "eqw/complex.hpp"

#include <algorithm>
#include <string>

#include "eqw/error.hpp"

namespace eqw {

Complex::Complex(Variance variance, int lo, std::vector<std::size_t> dims,
                 std::vector<BitMatrix> diffs)
    : variance_(variance), lo_(lo), dims_(std::move(dims)) {
  require(diffs.size() == dims_.size(), "complex: need one differential per degree");
  diffs_.reserve(dims_.size() + 2);
  diffs_.emplace_back(0, dim(lo_ - 1 + step()));
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    const int k = lo_ + static_cast<int>(i);
    require(diffs[i].rows() == dims_[i] && diffs[i].cols() == dim(k + step()),
            "complex: differential leaving degree " + std::to_string(k) + " has shape " +
                std::to_string(diffs[i].rows()) + "x" + std::to_string(diffs[i].cols()));
    diffs_.push_back(std::move(diffs[i]));
  }
  diffs_.emplace_back(0, dim(hi() + 1 + step()));
  for (int k = lo_; k <= hi(); ++k) {
    require((d(k) * d(k + step())).is_zero(),
            "complex: d∘d != 0 starting at degree " + std::to_string(k));
  }
}

std::size_t Complex::dim(int k) const {
  if (k < lo_ || k > hi()) return 0;
  return dims_[static_cast<std::size_t>(k - lo_)];
}

std::size_t Complex::total_dim() const {
  std::size_t n = 0;
  for (auto d : dims_) n += d;
  return n;
}

const BitMatrix& Complex::d(int k) const {
  require(k >= lo_ - 1 && k <= hi() + 1,
          "complex: differential requested at degree " + std::to_string(k) + " outside range");
  return diffs_[static_cast<std::size_t>(k - lo_ + 1)];
}

Subspace cycles(const Complex& c, int k) {
  if (k < c.lo() || k > c.hi()) return Subspace(0);
  return kernel(c.d(k));
}

Subspace boundaries(const Complex& c, int k) {
  if (k < c.lo() || k > c.hi()) return Subspace(0);
  return image(c.d_into(k));
}

Homology homology(const Complex& c, int k) {
  Homology h;
  h.quotient = Subquotient(cycles(c, k), boundaries(c, k));
  h.dim = h.quotient.dim();
  h.representatives = h.quotient.section();
  return h;
}

std::size_t homology_dim(const Complex& c, int k) {
  if (k < c.lo() || k > c.hi()) return 0;
  return c.dim(k) - rank(c.d(k)) - rank(c.d_into(k));
}

long euler_characteristic(const Complex& c) {
  long chi = 0;
  for (int k = c.lo(); k <= c.hi(); ++k)
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(c.dim(k));
  return chi;
}

long homology_euler_characteristic(const Complex& c) {
  long chi = 0;
  for (int k = c.lo(); k <= c.hi(); ++k)
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(homology_dim(c, k));
  return chi;
}

Complex dualize(const Complex& c) {
  const Variance v = opposite(c.variance());
  const int s = step_of(v);
  std::vector<std::size_t> dims;
  std::vector<BitMatrix> diffs;
  for (int k = c.lo(); k <= c.hi(); ++k) {
    dims.push_back(c.dim(k));
    diffs.push_back(c.d(k + s).transpose());
  }
  return Complex(v, c.lo(), std::move(dims), std::move(diffs));
}

Complex negate_degrees(const Complex& c) {
  if (c.empty()) return Complex::zero(opposite(c.variance()));
  std::vector<std::size_t> dims;
  std::vector<BitMatrix> diffs;
  for (int k = -c.hi(); k <= -c.lo(); ++k) {
    dims.push_back(c.dim(-k));
    diffs.push_back(c.d(-k));
  }
  return Complex(opposite(c.variance()), -c.hi(), std::move(dims), std::move(diffs));
}

Complex shift_degrees(const Complex& c, int by) {
  if (c.empty()) return c;
  std::vector<std::size_t> dims;
  std::vector<BitMatrix> diffs;
  for (int k = c.lo(); k <= c.hi(); ++k) {
    dims.push_back(c.dim(k));
    diffs.push_back(c.d(k));
  }
  return Complex(c.variance(), c.lo() + by, std::move(dims), std::move(diffs));
}

ComplexMap negate_degrees(const ComplexMap& f) {
  ComplexMap m;
  m.lo = -(f.lo + static_cast<int>(f.parts.size()) - 1);
  m.parts.assign(f.parts.rbegin(), f.parts.rend());
  return m;
}

std::size_t tensor_block_offset(const Complex& a, const Complex& b, int n, int i) {
  std::size_t off = 0;
  for (int j = a.lo(); j < i; ++j) off += a.dim(j) * b.dim(n - j);
  return off;
}

Complex tensor(const Complex& a, const Complex& b) {
  require(a.variance() == b.variance(), "tensor: variance mismatch");
  if (a.empty() || b.empty()) return Complex::zero(a.variance());
  const int lo = a.lo() + b.lo();
  const int hi = a.hi() + b.hi();
  const int s = a.step();
  auto total = [&](int n) {
    std::size_t d = 0;
    for (int i = a.lo(); i <= a.hi(); ++i) d += a.dim(i) * b.dim(n - i);
    return d;
  };
  std::vector<std::size_t> dims;
  std::vector<BitMatrix> diffs;
  for (int n = lo; n <= hi; ++n) {
    dims.push_back(total(n));
    BitMatrix d(total(n), (n + s >= lo && n + s <= hi) ? total(n + s) : 0);
    if (d.cols() > 0) {
      for (int i = a.lo(); i <= a.hi(); ++i) {
        const int j = n - i;
        if (a.dim(i) == 0 || b.dim(j) == 0) continue;
        const std::size_t row0 = tensor_block_offset(a, b, n, i);
        // d(x ⊗ y) = dx ⊗ y + x ⊗ dy
        if (a.dim(i + s) > 0)
          d.add_block(row0, tensor_block_offset(a, b, n + s, i + s),
                      kron(a.d(i), BitMatrix::identity(b.dim(j))));
        if (b.dim(j + s) > 0)
          d.add_block(row0, tensor_block_offset(a, b, n + s, i),
                      kron(BitMatrix::identity(a.dim(i)), b.d(j)));
      }
    }
    diffs.push_back(std::move(d));
  }
  return Complex(a.variance(), lo, std::move(dims), std::move(diffs));
}

// ---------------------------------------------------------------- maps

BitMatrix ComplexMap::at(int k, const Complex& source, const Complex& target) const {
  const int idx = k - lo;
  if (idx >= 0 && idx < static_cast<int>(parts.size())) return parts[static_cast<std::size_t>(idx)];
  return BitMatrix(source.dim(k), target.dim(k));
}

ComplexMap identity_map(const Complex& c) {
  ComplexMap f;
  f.lo = c.lo();
  for (int k = c.lo(); k <= c.hi(); ++k) f.parts.push_back(BitMatrix::identity(c.dim(k)));
  return f;
}

ComplexMap zero_map(const Complex& source, const Complex& target) {
  ComplexMap f;
  f.lo = source.lo();
  for (int k = source.lo(); k <= source.hi(); ++k)
    f.parts.emplace_back(source.dim(k), target.dim(k));
  return f;
}

ComplexMap compose(const ComplexMap& f, const ComplexMap& g, const Complex& a, const Complex& b,
                   const Complex& c) {
  ComplexMap h;
  h.lo = a.lo();
  for (int k = a.lo(); k <= a.hi(); ++k) h.parts.push_back(f.at(k, a, b) * g.at(k, b, c));
  return h;
}

bool shapes_match(const ComplexMap& f, const Complex& source, const Complex& target) {
  for (std::size_t i = 0; i < f.parts.size(); ++i) {
    const int k = f.lo + static_cast<int>(i);
    if (f.parts[i].rows() != source.dim(k) || f.parts[i].cols() != target.dim(k)) return false;
  }
  return true;
}

bool is_chain_map(const ComplexMap& f, const Complex& source, const Complex& target) {
  if (source.variance() != target.variance() || !shapes_match(f, source, target)) return false;
  const int s = source.step();
  for (int k = std::min(source.lo(), target.lo()); k <= std::max(source.hi(), target.hi()); ++k) {
    if (source.dim(k) == 0) continue;
    const BitMatrix ds = (k >= source.lo() && k <= source.hi())
                             ? source.d(k)
                             : BitMatrix(0, source.dim(k + s));
    BitMatrix dt(target.dim(k), target.dim(k + s));
    if (k >= target.lo() - 1 && k <= target.hi() + 1) dt = target.d(k);
    if (!(ds * f.at(k + s, source, target) == f.at(k, source, target) * dt)) return false;
  }
  return true;
}

BitMatrix induced_on_homology(const ComplexMap& f, const Complex& source, const Complex& target,
                              int k) {
  const Homology hs = homology(source, k);
  const Homology ht = homology(target, k);
  BitMatrix m(hs.dim, ht.dim);
  if (hs.dim == 0 || ht.dim == 0) return m;
  const BitMatrix images = hs.representatives * f.at(k, source, target);
  for (std::size_t i = 0; i < hs.dim; ++i) m.set_row(i, ht.quotient.coordinates(images.row(i)));
  return m;
}

bool is_quasi_iso(const ComplexMap& f, const Complex& source, const Complex& target) {
  const int lo = std::min(source.lo(), target.lo());
  const int hi = std::max(source.hi(), target.hi());
  for (int k = lo; k <= hi; ++k) {
    const BitMatrix m = induced_on_homology(f, source, target, k);
    if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
  }
  return true;
}

}  // namespace eqw
