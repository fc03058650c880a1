#include "eqw/products.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "eqw/error.hpp"

namespace eqw {

namespace {

Simplex slice(const Simplex& s, std::size_t from, std::size_t to) {  // vertices [from, to]
  return Simplex(s.begin() + static_cast<std::ptrdiff_t>(from), s.begin() + static_cast<std::ptrdiff_t>(to) + 1);
}

std::size_t index_of(const SimplicialGSet& x, const Simplex& s) {
  const auto i = x.find(s);
  require(i.has_value(), "products: missing face of a simplex");
  return *i;
}

// Front i-face and back (n-i)-face indices of every n-simplex.
struct Faces {
  std::vector<std::vector<std::vector<std::pair<std::size_t, std::size_t>>>> fb;  // [n][s][i]
};

Faces faces_of(const SimplicialGSet& x) {
  Faces f;
  for (int n = 0; n <= x.dimension(); ++n) {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> per;
    for (const auto& s : x.simplices(n)) {
      std::vector<std::pair<std::size_t, std::size_t>> row;
      for (int i = 0; i <= n; ++i)
        row.push_back({index_of(x, slice(s, 0, static_cast<std::size_t>(i))),
                       index_of(x, slice(s, static_cast<std::size_t>(i), static_cast<std::size_t>(n)))});
      per.push_back(std::move(row));
    }
    f.fb.push_back(std::move(per));
  }
  return f;
}

ComplexMap transpose_map(const ComplexMap& f) {
  ComplexMap t;
  t.lo = f.lo;
  for (const auto& p : f.parts) t.parts.push_back(p.transpose());
  return t;
}

// Map with parts over the whole source range.
ComplexMap sized_map(const Complex& source, const Complex& target) {
  ComplexMap m;
  m.lo = source.lo();
  for (int k = source.lo(); k <= source.hi(); ++k) m.parts.emplace_back(source.dim(k), target.dim(k));
  return m;
}

BitMatrix& part(ComplexMap& m, int k) { return m.parts[static_cast<std::size_t>(k - m.lo)]; }

// f ⊗ g : a ⊗ b -> c ⊗ d
ComplexMap tensor_maps(const ComplexMap& f, const ComplexMap& g, const Complex& a, const Complex& b,
                       const Complex& c, const Complex& d) {
  const Complex s = tensor(a, b);
  const Complex t = tensor(c, d);
  ComplexMap m = sized_map(s, t);
  for (int n = s.lo(); n <= s.hi(); ++n)
    for (int i = a.lo(); i <= a.hi(); ++i) {
      const int j = n - i;
      if (a.dim(i) == 0 || b.dim(j) == 0 || c.dim(i) == 0 || d.dim(j) == 0) continue;
      part(m, n).add_block(tensor_block_offset(a, b, n, i), tensor_block_offset(c, d, n, i),
                           kron(f.at(i, a, c), g.at(j, b, d)));
    }
  return m;
}

GroupHom triple_diagonal(const FiniteGroup& g) {
  const FiniteGroup gg = product_group(g, g);
  const FiniteGroup ggg = product_group(g, gg);
  std::vector<int> image;
  for (int x = 0; x < g.order(); ++x) image.push_back(product_index(gg, x, product_index(g, x, x)));
  return GroupHom(g, ggg, std::move(image));
}

BitVector apply(const ComplexMap& f, const BitVector& v, int k, const Complex& s, const Complex& t) {
  return v * f.at(k, s, t);
}

bool same_resolution(const FreeResolution& a, const FreeResolution& b) {
  if (!(a.group() == b.group()) || a.depth() != b.depth()) return false;
  for (int p = 0; p <= a.depth(); ++p) {
    if (a.rank(p) != b.rank(p)) return false;
    for (int i = 0; p > 0 && i < static_cast<int>(a.rank(p)); ++i)
      if (a.boundary_terms(p, i) != b.boundary_terms(p, i)) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> tensor_offsets(const FreeResolution& a, const FreeResolution& b) {
  const int depth = std::min(a.depth(), b.depth());
  std::vector<std::vector<std::size_t>> out;
  for (int k = 0; k <= depth; ++k) {
    std::vector<std::size_t> row;
    std::size_t r = 0;
    for (int i = 0; i <= k; ++i) {
      row.push_back(r);
      r += a.rank(i) * b.rank(k - i);
    }
    row.push_back(r);
    out.push_back(std::move(row));
  }
  return out;
}

// Blocks of an L complex in internal degree m with internal q.
std::vector<LBlock> internal_blocks(const LComplex& l, int m) {
  auto bs = l.blocks(l.variance() == Variance::chain ? -m : m);
  if (l.variance() == Variance::chain)
    for (auto& b : bs) b.q = -b.q;
  return bs;
}

BitVector segment(const BitVector& v, std::size_t off, std::size_t n) {
  BitVector out(n);
  for (std::size_t c = 0; c < n; ++c)
    if (v.get(off + c)) out.set(c);
  return out;
}

std::string degrees(std::initializer_list<int> ds) {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (int d : ds) {
    if (!first) os << ",";
    os << d;
    first = false;
  }
  os << ")";
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------- chains

ComplexMap aw_diagonal(const SimplicialGSet& x) {
  const Complex c = x.chains().complex();
  const Complex t = tensor(c, c);
  const Faces f = faces_of(x);
  ComplexMap m = sized_map(c, t);
  for (int n = 0; n <= x.dimension(); ++n)
    for (std::size_t s = 0; s < x.count(n); ++s)
      for (int i = 0; i <= n; ++i) {
        const auto [front, back] = f.fb[n][s][i];
        part(m, n).set(s, tensor_block_offset(c, c, n, i) + front * c.dim(n - i) + back);
      }
  return m;
}

ComplexMap dual_pairing(const Complex& a, const Complex& b) {
  require(a.variance() == Variance::chain && b.variance() == Variance::chain, "dual_pairing: chain complexes");
  const Complex da = dualize(a), db = dualize(b);
  const Complex s = tensor(da, db);
  const Complex t = dualize(tensor(a, b));
  ComplexMap m = sized_map(s, t);
  for (int n = s.lo(); n <= s.hi(); ++n)
    for (int i = a.lo(); i <= a.hi(); ++i) {
      const int j = n - i;
      for (std::size_t x = 0; x < a.dim(i); ++x)
        for (std::size_t y = 0; y < b.dim(j); ++y)
          part(m, n).set(tensor_block_offset(da, db, n, i) + x * db.dim(j) + y,
                         tensor_block_offset(a, b, n, i) + x * b.dim(j) + y);
    }
  return m;
}

ComplexMap evaluation(const Complex& c) {
  require(c.variance() == Variance::chain, "evaluation: chain complex");
  const Complex p = negate_degrees(dualize(c));
  const Complex t2 = tensor(c, c);
  const Complex s = tensor(p, t2);
  ComplexMap m = sized_map(s, c);
  for (int n = s.lo(); n <= s.hi(); ++n) {
    if (c.dim(n) == 0) continue;
    for (int i = p.lo(); i <= p.hi(); ++i) {
      const int q = -i;
      const int mdeg = n - i;
      if (p.dim(i) == 0 || t2.dim(mdeg) == 0 || c.dim(mdeg - q) == 0) continue;
      // phi_f ⊗ (a ⊗ b) with a = f in degree q, b in degree n
      for (std::size_t f = 0; f < c.dim(q); ++f)
        for (std::size_t b = 0; b < c.dim(n); ++b)
          part(m, n).set(tensor_block_offset(p, t2, n, i) + f * t2.dim(mdeg) +
                             tensor_block_offset(c, c, mdeg, q) + f * c.dim(n) + b,
                         b);
    }
  }
  return m;
}

PairingData pairing_data(const SimplicialGSet& x) {
  PairingData d;
  d.chains = x.chains();
  d.cochains = x.cochains();
  const Complex& c = d.chains.complex();
  d.u = identity_map(tensor(c, c));
  d.w = dual_pairing(c, c);
  d.aw = aw_diagonal(x);
  d.h = evaluation(c);
  return d;
}

std::string check_pairing_data(const PairingData& d) {
  const Complex& c = d.chains.complex();
  const FiniteGroup& g = d.chains.group();
  const GComplex cc = tensor(d.chains, d.chains);
  if (!is_chain_map(d.u, cc.complex(), cc.complex()) || !check_equivariant(d.u, cc, cc)) return "u";
  const GComplex kk = tensor(d.cochains, d.cochains);
  const GComplex dual_cc = dualize(cc);
  if (!is_chain_map(d.w, kk.complex(), dual_cc.complex())) return "w is not a chain map";
  if (!check_equivariant(d.w, kk, dual_cc)) return "w is not equivariant";
  const GComplex diag_cc = restrict_along(diagonal(g), cc);
  if (!is_chain_map(d.aw, c, cc.complex())) return "aw is not a chain map";
  if (!check_equivariant(d.aw, d.chains, diag_cc)) return "aw is not equivariant";
  const GComplex hs = restrict_along(triple_diagonal(g), tensor(negate_degrees(d.cochains), cc));
  if (!is_chain_map(d.h, hs.complex(), c)) return "h is not a chain map";
  if (!check_equivariant(d.h, hs, d.chains)) return "h is not equivariant";
  return "";
}

ComplexMap cup_map(const SimplicialGSet& x) {
  const Complex c = x.chains().complex();
  const Complex k = dualize(c);
  const Complex kk = tensor(k, k);
  // aw^T : (C ⊗ C)^* -> C^*, preceded by w
  const ComplexMap awt = transpose_map(aw_diagonal(x));
  const ComplexMap w = dual_pairing(c, c);
  return compose(w, awt, kk, dualize(tensor(c, c)), k);
}

ComplexMap cap_map(const SimplicialGSet& x) {
  const Complex c = x.chains().complex();
  const Complex k = dualize(c);
  const Complex cn = negate_degrees(c);
  const Complex s = tensor(k, cn);
  const Faces f = faces_of(x);
  ComplexMap m = sized_map(s, cn);
  for (int q = 0; q <= x.dimension(); ++q)
    for (int t = q; t <= x.dimension(); ++t) {
      const int n = q - t;
      for (std::size_t sigma = 0; sigma < x.count(t); ++sigma) {
        const auto [front, back] = f.fb[t][sigma][t - q];
        part(m, n).set(tensor_block_offset(k, cn, n, q) + back * cn.dim(-t) + sigma, front);
      }
    }
  return m;
}

ComplexMap cap_via_evaluation(const SimplicialGSet& x) {
  const Complex c = x.chains().complex();
  const Complex p = negate_degrees(dualize(c));
  const Complex t2 = tensor(c, c);
  // swap ∘ aw
  const ComplexMap aw = aw_diagonal(x);
  ComplexMap sw = sized_map(t2, t2);
  for (int n = t2.lo(); n <= t2.hi(); ++n)
    for (int i = 0; i <= n; ++i) {
      const int j = n - i;
      for (std::size_t a = 0; a < c.dim(i); ++a)
        for (std::size_t b = 0; b < c.dim(j); ++b)
          part(sw, n).set(tensor_block_offset(c, c, n, i) + a * c.dim(j) + b,
                          tensor_block_offset(c, c, n, j) + b * c.dim(i) + a);
    }
  const ComplexMap saw = compose(aw, sw, c, t2, t2);
  const ComplexMap one_saw = tensor_maps(identity_map(p), saw, p, c, p, t2);
  return compose(one_saw, evaluation(c), tensor(p, c), tensor(p, t2), c);
}

// ---------------------------------------------------------------- modules

Subspace equivariant_homs(const GModule& source, const GModule& target) {
  require(source.group() == target.group(), "equivariant_homs: group mismatch");
  const std::size_t ds = source.dim(), dt = target.dim();
  if (ds * dt == 0) return Subspace(0);
  std::vector<BitMatrix> blocks;
  for (int g = 0; g < source.group().order(); ++g)
    blocks.push_back(kron(source.action(g).transpose(), BitMatrix::identity(dt)) +
                     kron(BitMatrix::identity(ds), target.action(g)));
  return kernel(hstack(blocks));
}

HomTensorIso hom_tensor_iso(const GModule& b, const GModule& a, const GModule& b2, const GModule& a2) {
  HomTensorIso out;
  out.hom_a = equivariant_homs(b, a);
  out.hom_b = equivariant_homs(b2, a2);
  out.hom_ab = equivariant_homs(tensor_gmodule(b, b2), tensor_gmodule(a, a2));
  const std::size_t cols = a.dim() * a2.dim();
  out.matrix = BitMatrix(out.hom_a.dim() * out.hom_b.dim(), out.hom_ab.dim());
  for (std::size_t r = 0; r < out.hom_a.dim(); ++r) {
    const BitMatrix& ba = out.hom_a.basis();
    for (std::size_t s = 0; s < out.hom_b.dim(); ++s) {
      const BitMatrix& bb = out.hom_b.basis();
      BitVector v(b.dim() * b2.dim() * cols);
      for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
          if (!ba.get(r, i * a.dim() + j)) continue;
          for (std::size_t i2 = 0; i2 < b2.dim(); ++i2)
            for (std::size_t j2 = 0; j2 < a2.dim(); ++j2)
              if (bb.get(s, i2 * a2.dim() + j2)) v.flip((i * b2.dim() + i2) * cols + j * a2.dim() + j2);
        }
      require(out.hom_ab.contains(v), "hom_tensor_iso: image is not equivariant");
      out.matrix.set_row(r * out.hom_b.dim() + s, out.hom_ab.coordinates(v));
    }
  }
  return out;
}

// ---------------------------------------------------------------- L level

ComplexMap l_product_iso(const LComplex& a, const LComplex& b, const LComplex& ab) {
  require(a.variance() == Variance::cochain && b.variance() == Variance::cochain &&
              ab.variance() == Variance::cochain,
          "l_product_iso: cochain sources only");
  const Complex& k = a.source().complex();
  const Complex& mm = b.source().complex();
  const Complex km = tensor(k, mm);
  const Complex& kab = ab.source().complex();
  require(ab.source().group() == product_group(a.source().group(), b.source().group()),
          "l_product_iso: group is not the product");
  for (int n = std::min(km.lo(), kab.lo()); n <= std::max(km.hi(), kab.hi()); ++n)
    require(km.dim(n) == kab.dim(n), "l_product_iso: source is not the tensor product");
  require(same_resolution(ab.resolution(), tensor_resolution(a.resolution(), b.resolution())),
          "l_product_iso: resolution is not the tensor resolution");
  const auto offsets = tensor_offsets(a.resolution(), b.resolution());
  const Complex& ta = a.total();
  const Complex& tb = b.total();
  const Complex s = tensor(ta, tb);
  ComplexMap m = sized_map(s, ab.total());
  for (int n = s.lo(); n <= s.hi(); ++n) {
    if (ab.total().dim(n) == 0) continue;
    for (int i = ta.lo(); i <= ta.hi(); ++i) {
      const int j = n - i;
      if (ta.dim(i) == 0 || tb.dim(j) == 0) continue;
      const std::size_t row0 = tensor_block_offset(ta, tb, n, i);
      for (const auto& ba : a.blocks(i))
        for (const auto& bb : b.blocks(j)) {
          const int p = ba.p + bb.p, q = ba.q + bb.q;
          const auto t = ab.block(p, q);
          if (!t || ba.width == 0 || bb.width == 0) continue;
          const std::size_t toff = tensor_block_offset(k, mm, q, ba.q);
          for (std::size_t x = 0; x < ba.gens; ++x)
            for (std::size_t y = 0; y < bb.gens; ++y) {
              const std::size_t gen = offsets[static_cast<std::size_t>(p)][static_cast<std::size_t>(ba.p)] +
                                      x * b.resolution().rank(bb.p) + y;
              for (std::size_t c = 0; c < ba.width; ++c)
                for (std::size_t c2 = 0; c2 < bb.width; ++c2)
                  part(m, n).set(row0 + (ba.offset + x * ba.width + c) * tb.dim(j) + bb.offset + y * bb.width + c2,
                                 t->offset + gen * t->width + toff + c * bb.width + c2);
            }
        }
    }
  }
  return m;
}

LProduct::LProduct(LComplex x, LComplex y, LComplex z, ComplexMap m, ResolutionMap tau)
    : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)), m_(std::move(m)), tau_(std::move(tau)) {
  const FreeResolution& f = x_.resolution();
  require(same_resolution(f, y_.resolution()) && same_resolution(f, z_.resolution()),
          "product: the L complexes use different resolutions");
  const FiniteGroup& g = f.group();
  require(tau_.phi.source == g && tau_.phi.target == product_group(g, g), "product: tau does not lift the diagonal");
  for (int e = 0; e < g.order(); ++e)
    require(tau_.phi(e) == product_index(g, e, e), "product: tau does not lift the diagonal");
  offsets_ = tensor_offsets(f, f);
  for (int p = 0; p <= tau_.depth() && p <= f.depth(); ++p)
    for (const auto& v : tau_.images[static_cast<std::size_t>(p)])
      require(v.size() == offsets_[static_cast<std::size_t>(p)].back() * static_cast<std::size_t>(g.order() * g.order()),
              "product: tau has the wrong target");
  xy_ = tensor(x_.internal_source(), y_.internal_source());
  const GComplex& zs = z_.internal_source();
  require(is_chain_map(m_, xy_.complex(), zs.complex()), "product: m is not a chain map");
  require(check_equivariant(m_, restrict_along(diagonal(g), xy_), zs), "product: m is not equivariant");
}

bool LProduct::defined(int i, int j) const {
  const Complex& t = z_.internal_total();
  return !t.empty() && i + j >= t.lo() && i + j <= t.hi();
}

BitVector LProduct::operator()(const BitVector& a, int i, const BitVector& b, int j) const {
  require(a.size() == x_.internal_total().dim(i) && b.size() == y_.internal_total().dim(j),
          "product: element has the wrong size");
  require(defined(i, j), "product: degree " + std::to_string(i + j) + " is not assembled");
  const GComplex& xs = x_.internal_source();
  const GComplex& ys = y_.internal_source();
  const Complex& xc = xs.complex();
  const Complex& yc = ys.complex();
  const int order = xs.group().order();
  const auto xb = internal_blocks(x_, i);
  const auto yb = internal_blocks(y_, j);
  auto find = [](const std::vector<LBlock>& bs, int p) -> const LBlock* {
    for (const auto& b : bs)
      if (b.p == p) return &b;
    return nullptr;
  };
  BitVector out(z_.internal_total().dim(i + j));
  if (a.none() || b.none()) return out;
  for (const auto& tb : internal_blocks(z_, i + j)) {
    if (tb.width == 0 || tb.p > tau_.depth()) continue;
    const int big_p = tb.p;
    const auto& offs = offsets_[static_cast<std::size_t>(big_p)];
    const BitMatrix mq = m_.at(tb.q, xy_.complex(), z_.internal_source().complex());
    for (std::size_t n = 0; n < tb.gens; ++n) {
      BitVector acc(xy_.complex().dim(tb.q));
      const BitVector& img = tau_.images[static_cast<std::size_t>(big_p)][n];
      for (std::size_t idx = img.first_set(); idx < img.size(); ++idx) {
        if (!img.get(idx)) continue;
        const std::size_t tg = idx / static_cast<std::size_t>(order * order);
        const int gg = static_cast<int>(idx % static_cast<std::size_t>(order * order));
        const int g1 = gg / order, g2 = gg % order;
        int p1 = 0;
        while (offs[static_cast<std::size_t>(p1) + 1] <= tg) ++p1;
        const int p2 = big_p - p1;
        const std::size_t local = tg - offs[static_cast<std::size_t>(p1)];
        const std::size_t r2 = x_.resolution().rank(p2);
        const std::size_t ga = local / r2, gb = local % r2;
        const LBlock* ba = find(xb, p1);
        const LBlock* bb = find(yb, p2);
        if (!ba || !bb || ba->width == 0 || bb->width == 0) continue;
        const BitVector va = segment(a, ba->offset + ga * ba->width, ba->width) * xs.act(g1, ba->q);
        if (va.none()) continue;
        const BitVector vb = segment(b, bb->offset + gb * bb->width, bb->width) * ys.act(g2, bb->q);
        if (vb.none()) continue;
        const std::size_t off = tensor_block_offset(xc, yc, tb.q, ba->q);
        for (std::size_t c = va.first_set(); c < va.size(); ++c) {
          if (!va.get(c)) continue;
          for (std::size_t c2 = vb.first_set(); c2 < vb.size(); ++c2)
            if (vb.get(c2)) acc.flip(off + c * bb->width + c2);
        }
      }
      if (acc.none()) continue;
      const BitVector val = acc * mq;
      const std::size_t base = tb.offset + n * tb.width;
      for (std::size_t c = val.first_set(); c < val.size(); ++c)
        if (val.get(c)) out.flip(base + c);
    }
  }
  return out;
}

BitMatrix page_product(const Bilinear& mul, const Subquotient& x, const Subquotient& y, const Subquotient& z) {
  BitMatrix out(x.dim() * y.dim(), z.dim());
  for (std::size_t r = 0; r < x.dim(); ++r) {
    const BitVector xr = x.section().row(r);
    for (std::size_t s = 0; s < y.dim(); ++s) {
      const BitVector v = mul(xr, y.section().row(s));
      require(z.numerator().contains(v), "page product leaves the target entry");
      if (z.dim()) out.set_row(r * y.dim() + s, z.coordinates(v));
    }
  }
  return out;
}

BitMatrix page_product(const LProduct& mul, const SpectralSequence& sx, SSKey kx, const SpectralSequence& sy,
                       SSKey ky, const SpectralSequence& sz, int r) {
  const Subquotient& x = sx.entry(r, kx);
  const Subquotient& y = sy.entry(r, ky);
  const SSKey kz{kx.a + ky.a, kx.k + ky.k};
  if (x.dim() == 0 || y.dim() == 0) return BitMatrix(x.dim() * y.dim(), sz.dim(r, kz));
  require(mul.defined(kx.k, ky.k), "page product: target degree is not assembled");
  const Subquotient& z = sz.entry(r, kz);
  Bilinear f = [&](const BitVector& a, const BitVector& b) { return mul(a, kx.k, b, ky.k); };
  if (z.ambient_dim() == 0 && mul.result().internal_total().dim(kz.k) != 0) {
    // filtration index outside the range: the target entry is zero
    return BitMatrix(x.dim() * y.dim(), 0);
  }
  return page_product(f, x, y, z);
}

bool usable_degree(const LComplex& l, int k) {
  const Complex& t = l.internal_total();
  const int m = l.internal_degree(k);
  return l.certified(k) && !t.empty() && m >= t.lo() && m <= t.hi();
}

BitMatrix homology_product(const LProduct& mul, int i, int j) {
  const Homology hx = homology(mul.left().internal_total(), i);
  const Homology hy = homology(mul.right().internal_total(), j);
  const Homology hz = homology(mul.result().internal_total(), i + j);
  Bilinear f = [&](const BitVector& a, const BitVector& b) { return mul(a, i, b, j); };
  return page_product(f, hx.quotient, hy.quotient, hz.quotient);
}

// ---------------------------------------------------------------- per space

EquivariantProducts::EquivariantProducts(SimplicialGSet x, FreeResolution res, int window)
    : x_(std::move(x)), res_(std::move(res)), window_(window) {
  require(x_.group() == res_.group(), "products: resolution is over a different group");
  const GComplex k = x_.cochains();
  const GComplex c = x_.chains();
  tau_ = lift_chain_map(diagonal(x_.group()), res_, tensor_resolution(res_, res_));
  const LComplex lk(k, res_, window);
  const LComplex lc(c, res_, window);
  cup_ = LProduct(lk, lk, lk, cup_map(x_), tau_);
  cap_ = LProduct(lk, lc, lc, cap_map(x_), tau_);
  cochain_ss_ = equivariant_weight_ss(lk, canonical_filtration(k.complex()));
  chain_ss_ = equivariant_weight_ss(lc, canonical_filtration(c.complex()));
}

BitVector EquivariantProducts::cup(const BitVector& x, int a, const BitVector& y, int b) const {
  return cup_(x, a, y, b);
}

BitVector EquivariantProducts::cap(const BitVector& phi, int a, const BitVector& c, int m) const {
  return cap_(phi, a, c, -m);
}

BitVector EquivariantProducts::fundamental_class(const BitVector& chain) const {
  require(res_.rank(0) == 1, "fundamental class: F_0 must have rank 1");
  const GComplex c = x_.chains();
  const int d = x_.dimension();
  require(chain.size() == c.complex().dim(d), "fundamental class: wrong size");
  require((chain * c.complex().d(d)).none(), "fundamental class: not a cycle");
  for (int g = 0; g < x_.group().order(); ++g)
    require(chain * c.act(g, d) == chain, "fundamental class: not invariant");
  return chains().embed(0, d, 0, chain);
}

// ---------------------------------------------------------------- identities

namespace {

IdentityResult start(const std::string& name, const std::string& scenario) {
  IdentityResult r;
  r.name = name;
  r.scenario = scenario;
  return r;
}

void fail(IdentityResult& r, const std::string& what) {
  if (r.pass) r.witness = what;
  r.pass = false;
}

// Certified and present in the assembled complex (public degree).
bool usable(const LComplex& l, int k) { return usable_degree(l, k); }

std::vector<int> cochain_degrees(const LComplex& l) {
  std::vector<int> out;
  for (int k : l.certified_degrees())
    if (l.internal_total().dim(k) > 0) out.push_back(k);
  return out;
}

}  // namespace

IdentityResult check_commutativity(const EquivariantProducts& e) {
  IdentityResult res = start("commutativity", e.space().name());
  const LComplex& l = e.cochains();
  const LProduct& cup = e.cup_product();
  for (int a : cochain_degrees(l))
    for (int b : cochain_degrees(l)) {
      if (b < a || !l.certified(a + b)) continue;
      const BitMatrix t1 = homology_product(cup, a, b);
      const BitMatrix t2 = homology_product(cup, b, a);
      const std::size_t da = homology_dim(l.internal_total(), a), db = homology_dim(l.internal_total(), b);
      for (std::size_t r = 0; r < da; ++r)
        for (std::size_t s = 0; s < db; ++s) {
          ++res.checked;
          if (t1.row(r * db + s) != t2.row(s * da + r))
            fail(res, "H^" + std::to_string(a) + " x H^" + std::to_string(b) + " basis " + degrees({int(r), int(s)}) +
                          ": " + t1.row(r * db + s).to_string() + " vs " + t2.row(s * da + r).to_string());
        }
    }
  // weight pages from page 2 on and the limit
  const SpectralSequence& ss = e.cochain_ss();
  std::vector<int> pages;
  for (int r = 1; r <= ss.last_page(); ++r) pages.push_back(r);
  pages.push_back(SpectralSequence::kInfinity);
  for (int r : pages)
    for (int k1 : cochain_degrees(l))
      for (int k2 : cochain_degrees(l)) {
        if (k2 < k1 || !l.certified(k1 + k2)) continue;
        for (int a1 = ss.amin(); a1 <= ss.amax(); ++a1)
          for (int a2 = ss.amin(); a2 <= ss.amax(); ++a2) {
            const SSKey x{a1, k1}, y{a2, k2};
            const BitMatrix t1 = page_product(cup, ss, x, ss, y, ss, r);
            const BitMatrix t2 = page_product(cup, ss, y, ss, x, ss, r);
            const std::size_t dx = ss.dim(r, x), dy = ss.dim(r, y);
            for (std::size_t i = 0; i < dx; ++i)
              for (std::size_t j = 0; j < dy; ++j) {
                ++res.checked;
                if (t1.row(i * dy + j) != t2.row(j * dx + i))
                  fail(res, "page " + std::to_string(r) + " entries " + degrees({a1, k1, a2, k2}));
              }
          }
      }
  return res;
}

IdentityResult check_associativity(const EquivariantProducts& e) {
  IdentityResult res = start("associativity", e.space().name());
  const LComplex& l = e.cochains();
  const Complex& t = l.internal_total();
  const auto ds = cochain_degrees(l);
  for (int a : ds)
    for (int b : ds)
      for (int c : ds) {
        if (!l.certified(a + b + c)) continue;
        const Homology ha = homology(t, a), hb = homology(t, b), hc = homology(t, c);
        const Homology hz = homology(t, a + b + c);
        for (std::size_t i = 0; i < ha.quotient.dim(); ++i)
          for (std::size_t j = 0; j < hb.quotient.dim(); ++j)
            for (std::size_t k = 0; k < hc.quotient.dim(); ++k) {
              const BitVector x = ha.quotient.section().row(i);
              const BitVector y = hb.quotient.section().row(j);
              const BitVector z = hc.quotient.section().row(k);
              const BitVector lhs = e.cup(e.cup(x, a, y, b), a + b, z, c);
              const BitVector rhs = e.cup(x, a, e.cup(y, b, z, c), b + c);
              ++res.checked;
              if (hz.quotient.coordinates(lhs) != hz.quotient.coordinates(rhs))
                fail(res, "degrees " + degrees({a, b, c}) + " basis " + degrees({int(i), int(j), int(k)}));
            }
      }
  return res;
}

IdentityResult check_cup_functoriality(const EquivariantProducts& ex, const EquivariantProducts& ey,
                                       const std::vector<int>& vertex_map) {
  IdentityResult res = start("cup_functoriality", ex.space().name() + "->" + ey.space().name());
  const ComplexMap fs = cochain_map(ex.space(), ey.space(), vertex_map);
  const LComplex& lx = ex.cochains();
  const LComplex& ly = ey.cochains();
  const ComplexMap lf = l_map(fs, ly, lx);
  const Complex& tx = lx.internal_total();
  const Complex& ty = ly.internal_total();
  for (int a : cochain_degrees(ly))
    for (int b : cochain_degrees(ly)) {
      if (!ly.certified(a + b) || !lx.certified(a + b)) continue;
      const Homology ha = homology(ty, a), hb = homology(ty, b);
      const Homology hz = homology(tx, a + b);
      for (std::size_t i = 0; i < ha.quotient.dim(); ++i)
        for (std::size_t j = 0; j < hb.quotient.dim(); ++j) {
          const BitVector x = ha.quotient.section().row(i);
          const BitVector y = hb.quotient.section().row(j);
          const BitVector lhs = apply(lf, ey.cup(x, a, y, b), a + b, ty, tx);
          const BitVector rhs = ex.cup(apply(lf, x, a, ty, tx), a, apply(lf, y, b, ty, tx), b);
          ++res.checked;
          if (hz.quotient.coordinates(lhs) != hz.quotient.coordinates(rhs))
            fail(res, "degrees " + degrees({a, b}) + " basis " + degrees({int(i), int(j)}));
        }
    }
  return res;
}

IdentityResult check_pairing(const SimplicialGSet& x) {
  IdentityResult res = start("pairing", x.name());
  const Complex c = x.chains().complex();
  const Complex k = dualize(c);
  const Complex cn = negate_degrees(c);
  const ComplexMap cup = cup_map(x);
  const ComplexMap cap = cap_map(x);
  const Complex kk = tensor(k, k);
  const Complex kc = tensor(k, cn);
  const int d = x.dimension();
  for (int a = 0; a <= d; ++a)
    for (int b = 0; a + b <= d; ++b) {
      const int n = a + b;
      const BitMatrix cup_n = cup.at(n, kk, k);
      const BitMatrix cap_n = cap.at(-a, kc, cn);  // K^b ⊗ C_n -> C_a
      for (std::size_t psi = 0; psi < c.dim(a); ++psi)
        for (std::size_t phi = 0; phi < c.dim(b); ++phi)
          for (std::size_t sigma = 0; sigma < c.dim(n); ++sigma) {
            const bool lhs =
                cap_n.get(tensor_block_offset(k, cn, -a, b) + phi * cn.dim(-n) + sigma, psi);
            const bool rhs = cup_n.get(tensor_block_offset(k, k, n, a) + psi * k.dim(b) + phi, sigma);
            ++res.checked;
            if (lhs != rhs) fail(res, "basis " + degrees({a, int(psi), b, int(phi), int(sigma)}));
          }
    }
  return res;
}

IdentityResult check_mixed(const EquivariantProducts& e) {
  IdentityResult res = start("mixed", e.space().name());
  const LComplex& lk = e.cochains();
  const LComplex& lc = e.chains();
  const Complex& tk = lk.internal_total();
  const Complex& tc = lc.internal_total();
  for (int a : cochain_degrees(lk))
    for (int b : cochain_degrees(lk)) {
      if (!lk.certified(a + b)) continue;
      for (int m : lc.certified_degrees()) {
        if (!usable(lc, m) || !usable(lc, m - a - b) || !usable(lc, m - b)) continue;
        const Homology ha = homology(tk, a), hb = homology(tk, b), hm = homology(tc, -m);
        const Homology hz = homology(tc, -(m - a - b));
        for (std::size_t i = 0; i < ha.quotient.dim(); ++i)
          for (std::size_t j = 0; j < hb.quotient.dim(); ++j)
            for (std::size_t s = 0; s < hm.quotient.dim(); ++s) {
              const BitVector psi = ha.quotient.section().row(i);
              const BitVector phi = hb.quotient.section().row(j);
              const BitVector c = hm.quotient.section().row(s);
              const BitVector lhs = e.cap(e.cup(psi, a, phi, b), a + b, c, m);
              const BitVector rhs = e.cap(psi, a, e.cap(phi, b, c, m), m - b);
              ++res.checked;
              if (hz.quotient.coordinates(lhs) != hz.quotient.coordinates(rhs))
                fail(res, "degrees " + degrees({a, b, m}) + " basis " + degrees({int(i), int(j), int(s)}));
            }
      }
    }
  return res;
}

IdentityResult check_projection(const EquivariantProducts& ex, const EquivariantProducts& ey,
                                const std::vector<int>& vertex_map) {
  IdentityResult res = start("projection", ex.space().name() + "->" + ey.space().name());
  const ComplexMap f_lower = chain_map(ex.space(), ey.space(), vertex_map);
  const ComplexMap f_upper = cochain_map(ex.space(), ey.space(), vertex_map);
  const ComplexMap lf_lower = l_map(f_lower, ex.chains(), ey.chains());
  const ComplexMap lf_upper = l_map(f_upper, ey.cochains(), ex.cochains());
  const Complex& kx = ex.cochains().internal_total();
  const Complex& ky = ey.cochains().internal_total();
  const Complex& cx = ex.chains().total();
  const Complex& cy = ey.chains().total();
  for (int a : cochain_degrees(ey.cochains())) {
    if (!ex.cochains().certified(a)) continue;
    for (int m : ex.chains().certified_degrees()) {
      if (!usable(ex.chains(), m) || !usable(ey.chains(), m) || !usable(ey.chains(), m - a) ||
          !usable(ex.chains(), m - a))
        continue;
      const Homology hp = homology(ky, a);
      const Homology hc = homology(ex.chains().internal_total(), -m);
      const Homology hz = homology(ey.chains().internal_total(), -(m - a));
      for (std::size_t i = 0; i < hp.quotient.dim(); ++i)
        for (std::size_t s = 0; s < hc.quotient.dim(); ++s) {
          const BitVector phi = hp.quotient.section().row(i);
          const BitVector c = hc.quotient.section().row(s);
          const BitVector lhs = ey.cap(phi, a, apply(lf_lower, c, m, cx, cy), m);
          const BitVector rhs = apply(lf_lower, ex.cap(apply(lf_upper, phi, a, ky, kx), a, c, m), m - a, cx, cy);
          ++res.checked;
          if (hz.quotient.coordinates(lhs) != hz.quotient.coordinates(rhs))
            fail(res, "degrees " + degrees({a, m}) + " basis " + degrees({int(i), int(s)}));
        }
    }
  }
  return res;
}

IdentityResult check_cross_naturality(const SimplicialGSet& x, const SimplicialGSet& y,
                                      const std::vector<int>& vertex_map, const FreeResolution& res,
                                      int window) {
  IdentityResult out = start("cross_naturality", x.name() + "->" + y.name());
  const GComplex kx = x.cochains(), ky = y.cochains();
  const ComplexMap f = cochain_map(x, y, vertex_map);  // K_Y -> K_X
  const FreeResolution rr = tensor_resolution(res, res);
  const LComplex lx(kx, res, window), ly(ky, res, window);
  const LComplex lxx(tensor(kx, kx), rr, window), lyy(tensor(ky, ky), rr, window);
  const ComplexMap iso_x = l_product_iso(lx, lx, lxx);
  const ComplexMap iso_y = l_product_iso(ly, ly, lyy);
  const ComplexMap lf = l_map(f, ly, lx);
  const ComplexMap ff = tensor_maps(f, f, ky.complex(), ky.complex(), kx.complex(), kx.complex());
  const ComplexMap lff = l_map(ff, lyy, lxx);
  const Complex syy = tensor(ly.total(), ly.total());
  const Complex sxx = tensor(lx.total(), lx.total());
  const ComplexMap lf2 = tensor_maps(lf, lf, ly.total(), ly.total(), lx.total(), lx.total());
  for (int n = 0; n <= window; ++n) {
    if (!lxx.certified(n) || !lyy.certified(n)) continue;
    const BitMatrix lhs = lf2.at(n, syy, sxx) * iso_x.at(n, sxx, lxx.total());
    const BitMatrix rhs = iso_y.at(n, syy, lyy.total()) * lff.at(n, lyy.total(), lxx.total());
    out.checked += lhs.rows();
    if (!(lhs == rhs)) fail(out, "degree " + std::to_string(n));
  }
  return out;
}

IdentityResult check_page_additivity(const EquivariantProducts& e) {
  IdentityResult res = start("page_additivity", e.space().name());
  const LComplex& lk = e.cochains();
  const LComplex& lc = e.chains();
  const SpectralSequence& sk = e.cochain_ss();
  const SpectralSequence& sc = e.chain_ss();
  std::vector<int> pages;
  for (int r = 1; r <= std::min(sk.last_page(), sc.last_page()); ++r) pages.push_back(r);
  pages.push_back(SpectralSequence::kInfinity);
  for (int r : pages)
    for (int k1 : cochain_degrees(lk)) {
      for (int k2 : cochain_degrees(lk)) {
        if (!lk.certified(k1 + k2)) continue;
        for (int a1 = sk.amin(); a1 <= sk.amax(); ++a1)
          for (int a2 = sk.amin(); a2 <= sk.amax(); ++a2) {
            try {
              page_product(e.cup_product(), sk, {a1, k1}, sk, {a2, k2}, sk, r);
              ++res.checked;
            } catch (const Error& err) {
              fail(res, "cup page " + std::to_string(r) + " " + degrees({a1, k1, a2, k2}) + ": " + err.what());
            }
          }
      }
      for (int m : lc.certified_degrees()) {
        if (!usable(lc, m) || !usable(lc, m - k1)) continue;
        for (int a1 = sk.amin(); a1 <= sk.amax(); ++a1)
          for (int a2 = sc.amin(); a2 <= sc.amax(); ++a2) {
            try {
              page_product(e.cap_product(), sk, {a1, k1}, sc, {a2, -m}, sc, r);
              ++res.checked;
            } catch (const Error& err) {
              fail(res, "cap page " + std::to_string(r) + " " + degrees({a1, k1, a2, -m}) + ": " + err.what());
            }
          }
      }
    }
  return res;
}

// ---------------------------------------------------------------- Künneth

namespace {

std::size_t safe_dim(const SpectralSequence& ss, int r, SSKey key) {
  if (key.a < ss.amin() || key.a > ss.amax() || key.k < ss.lo() || key.k > ss.hi()) return 0;
  return ss.dim(r, key);
}

std::size_t safe_omega(const SpectralSequence& ss, int level, int k) {
  if (k < ss.lo() || k > ss.hi()) return 0;
  if (level < ss.amin()) return ss.total_dim(k);
  if (level > ss.amax()) return 0;
  return ss.omega_dim(level, k);
}

}  // namespace

KunnethReport kunneth_equivariant(const SimplicialGSet& x, const FreeResolution& fx, const SimplicialGSet& y,
                                  const FreeResolution& fy, int max_degree) {
  KunnethReport rep;
  rep.max_degree = max_degree;
  const GComplex k = x.cochains(), m = y.cochains();
  const LComplex la(k, fx, max_degree), lb(m, fy, max_degree);
  const GComplex km = tensor(k, m);
  const LComplex lab(km, tensor_resolution(fx, fy), max_degree);
  require(la.certified(max_degree) && lb.certified(max_degree) && lab.certified(max_degree),
          "kunneth: resolutions do not certify degree " + std::to_string(max_degree));
  const FilteredComplex ia = induced_filtration(la, canonical_filtration(k.complex()));
  const FilteredComplex ib = induced_filtration(lb, canonical_filtration(m.complex()));
  const FilteredComplex tensor_side = tensor_filtered(ia, ib);
  const FilteredComplex direct = induced_filtration(lab, canonical_filtration(km.complex()));
  const SpectralSequence st(tensor_side, SpectralSequence::kAuto);
  const SpectralSequence sd(direct, SpectralSequence::kAuto);
  const int amin = std::min(st.amin(), sd.amin()), amax = std::max(st.amax(), sd.amax());
  const int lo = std::min(st.lo(), sd.lo());
  auto note = [&](const std::string& s) {
    if (rep.detail.empty()) rep.detail = s;
  };
  const int last = std::min(st.last_page(), sd.last_page());
  for (int kk = lo; kk <= max_degree; ++kk)
    for (int a = amin; a <= amax; ++a) {
      for (int r = 1; r <= last; ++r)
        if (safe_dim(st, r, {a, kk}) != safe_dim(sd, r, {a, kk})) {
          (r == 1 ? rep.e1_equal : rep.pages_equal) = false;
          note("page " + std::to_string(r) + " entry " + degrees({a, kk}));
        }
      if (safe_dim(st, SpectralSequence::kInfinity, {a, kk}) != safe_dim(sd, SpectralSequence::kInfinity, {a, kk})) {
        rep.einf_equal = false;
        note("limit entry " + degrees({a, kk}));
      }
      if (safe_omega(st, a, kk) != safe_omega(sd, a, kk)) {
        rep.omega_equal = false;
        note("omega " + degrees({a, kk}));
      }
    }
  const ComplexMap iso = l_product_iso(la, lb, lab);
  rep.iso_filtered = is_filtered(iso, tensor_side, direct);
  if (!rep.iso_filtered) note("product map is not filtered");
  if (rep.iso_filtered) {
    const SpectralSequence s1(tensor_side, 1), d1(direct, 1);
    for (int kk = lo; kk <= max_degree; ++kk)
      for (int a = amin; a <= amax; ++a) {
        const std::size_t ds = safe_dim(s1, 1, {a, kk}), dd = safe_dim(d1, 1, {a, kk});
        if (ds != dd || (ds && rank(page_map(s1, d1, iso, 1, {a, kk})) != ds)) {
          rep.iso_e1_bijective = false;
          note("product map on E_1 at " + degrees({a, kk}));
        }
      }
  }
  return rep;
}

// ---------------------------------------------------------------- duality

DualityReport equivariant_duality(const EquivariantProducts& e, const BitVector& fundamental, int page) {
  DualityReport rep;
  rep.page = page;
  const BitVector fx = e.fundamental_class(fundamental);
  const int d = e.space().dimension();
  const LComplex& lk = e.cochains();
  const LComplex& lc = e.chains();
  const SpectralSequence& sk = e.cochain_ss();
  const SpectralSequence& sc = e.chain_ss();
  const int r = sk.to_internal(page, 0, 0).first;
  const SSKey xk{d, -d};
  require(sc.entry(r, xk).numerator().contains(fx), "duality: [X] is not a permanent cycle at weight -d");
  for (int k : lk.certified_degrees()) {
    if (!usable(lk, k) || !usable(lc, d - k)) continue;
    for (int a = sk.amin(); a <= sk.amax(); ++a) {
      const SSKey src{a, k};
      const SSKey tgt{a + d, k - d};
      const Subquotient& s = sk.entry(r, src);
      const Subquotient& t = sc.entry(r, tgt);
      if (s.dim() == 0 && t.dim() == 0) continue;
      DualityEntry en;
      std::tie(en.p, en.q) = sk.to_label(src);
      std::tie(en.tp, en.tq) = sc.to_label(tgt);
      en.source_dim = s.dim();
      en.target_dim = t.dim();
      BitMatrix m(s.dim(), t.dim());
      for (std::size_t i = 0; i < s.dim(); ++i) {
        const BitVector v = e.cap_product()(s.section().row(i), k, fx, -d);
        require(t.ambient_dim() == v.size() && t.numerator().contains(v), "duality: cap leaves the target entry");
        if (t.dim()) m.set_row(i, t.coordinates(v));
      }
      en.rank = rank(m);
      if (en.rank != en.source_dim || en.rank != en.target_dim) rep.bijective = false;
      rep.entries.push_back(en);
    }
    const Homology hs = homology(lk.internal_total(), k);
    const Homology ht = homology(lc.internal_total(), k - d);
    DualityDegree dd;
    dd.k = k;
    dd.source_dim = hs.quotient.dim();
    dd.target_dim = ht.quotient.dim();
    BitMatrix m(dd.source_dim, dd.target_dim);
    for (std::size_t i = 0; i < dd.source_dim; ++i) {
      const BitVector v = e.cap_product()(hs.quotient.section().row(i), k, fx, -d);
      if (dd.target_dim) m.set_row(i, ht.quotient.coordinates(v));
    }
    dd.rank = rank(m);
    if (dd.rank != dd.source_dim || dd.rank != dd.target_dim) rep.bijective = false;
    rep.degrees.push_back(dd);
  }
  return rep;
}

}  // namespace eqw
