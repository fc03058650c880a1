#include "eqw/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "eqw/equivariant.hpp"
#include "eqw/error.hpp"
#include "eqw/products.hpp"

namespace eqw::scenario {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------- reading

class Reader {
 public:
  explicit Reader(std::vector<Issue>& issues) : issues_(issues) {}

  void error(const std::string& path, const std::string& message) { issues_.push_back({path, message}); }
  std::size_t count() const { return issues_.size(); }

  bool object(const json& j, const std::string& path, const std::set<std::string>& allowed) {
    if (!j.is_object()) {
      error(path, "expected an object");
      return false;
    }
    bool ok = true;
    for (const auto& [key, value] : j.items())
      if (!allowed.count(key)) {
        error(path + "/" + key, "unknown field");
        ok = false;
      }
    return ok;
  }

  std::optional<long long> integer(const json& obj, const std::string& path, const std::string& key,
                                   long long lo, long long hi) {
    const json& v = obj.at(key);
    const std::string p = path + "/" + key;
    if (!v.is_number_integer()) {
      error(p, "expected an integer");
      return std::nullopt;
    }
    const long long x = v.get<long long>();
    if (x < lo || x > hi) {
      error(p, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
      return std::nullopt;
    }
    return x;
  }

  std::optional<std::string> string(const json& obj, const std::string& path, const std::string& key,
                                    const std::vector<std::string>& choices = {}) {
    const json& v = obj.at(key);
    const std::string p = path + "/" + key;
    if (!v.is_string()) {
      error(p, "expected a string");
      return std::nullopt;
    }
    const std::string s = v.get<std::string>();
    if (!choices.empty() && std::find(choices.begin(), choices.end(), s) == choices.end()) {
      std::string list;
      for (const auto& c : choices) list += (list.empty() ? "" : ", ") + c;
      error(p, "'" + s + "' is not one of: " + list);
      return std::nullopt;
    }
    return s;
  }

  std::optional<bool> boolean(const json& obj, const std::string& path, const std::string& key) {
    const json& v = obj.at(key);
    if (!v.is_boolean()) {
      error(path + "/" + key, "expected true or false");
      return std::nullopt;
    }
    return v.get<bool>();
  }

  std::optional<std::vector<int>> int_list(const json& v, const std::string& path) {
    if (!v.is_array()) {
      error(path, "expected an array of integers");
      return std::nullopt;
    }
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number_integer() || v[i].get<long long>() < 0 || v[i].get<long long>() > 1000000) {
        error(path + "/" + std::to_string(i), "expected a non-negative integer");
        return std::nullopt;
      }
      out.push_back(v[i].get<int>());
    }
    return out;
  }

 private:
  std::vector<Issue>& issues_;
};

std::optional<FiniteGroup> read_group(Reader& rd, const json& j, const std::string& path) {
  if (!rd.object(j, path, {"cyclic", "table", "product"})) return std::nullopt;
  if (j.size() != 1) {
    rd.error(path, "give exactly one of cyclic, table, product");
    return std::nullopt;
  }
  try {
    if (j.contains("cyclic")) {
      const auto n = rd.integer(j, path, "cyclic", 1, 64);
      if (!n) return std::nullopt;
      return FiniteGroup::cyclic(static_cast<int>(*n));
    }
    if (j.contains("table")) {
      const json& t = j.at("table");
      if (!t.is_array() || t.empty() || t.size() > 64) {
        rd.error(path + "/table", "expected a non-empty square array of at most 64 rows");
        return std::nullopt;
      }
      std::vector<std::vector<int>> table;
      for (std::size_t i = 0; i < t.size(); ++i) {
        const auto row = rd.int_list(t[i], path + "/table/" + std::to_string(i));
        if (!row) return std::nullopt;
        table.push_back(*row);
      }
      return FiniteGroup(table);
    }
    const json& p = j.at("product");
    if (!p.is_array() || p.size() != 2) {
      rd.error(path + "/product", "expected two groups");
      return std::nullopt;
    }
    const auto a = read_group(rd, p[0], path + "/product/0");
    const auto b = read_group(rd, p[1], path + "/product/1");
    if (!a || !b) return std::nullopt;
    if (a->order() * b->order() > 64) {
      rd.error(path + "/product", "order exceeds 64");
      return std::nullopt;
    }
    return product_group(*a, *b);
  } catch (const Error& e) {
    rd.error(path, e.what());
    return std::nullopt;
  }
}

std::optional<SimplicialGSet> read_space(Reader& rd, const json& j, const std::string& path) {
  if (!j.is_object()) {
    rd.error(path, "expected an object");
    return std::nullopt;
  }
  std::optional<FiniteGroup> group;
  if (j.contains("builtin")) {
    if (!rd.object(j, path, {"builtin", "group"})) return std::nullopt;
    const auto names = builtin_names();
    const auto name = rd.string(j, path, "builtin", names);
    if (!name) return std::nullopt;
    if (j.contains("group")) {
      group = read_group(rd, j.at("group"), path + "/group");
      if (!group) return std::nullopt;
    }
    try {
      return builtin(*name, group);
    } catch (const Error& e) {
      rd.error(path + "/group", e.what());
      return std::nullopt;
    }
  }
  if (!rd.object(j, path, {"name", "group", "simplices", "action"})) return std::nullopt;
  if (!j.contains("simplices")) {
    rd.error(path, "needs either builtin or simplices");
    return std::nullopt;
  }
  std::string name = "inline";
  if (j.contains("name")) {
    const auto n = rd.string(j, path, "name");
    if (!n) return std::nullopt;
    name = *n;
  }
  group = FiniteGroup::trivial();
  if (j.contains("group")) {
    group = read_group(rd, j.at("group"), path + "/group");
    if (!group) return std::nullopt;
  }
  const json& sj = j.at("simplices");
  if (!sj.is_array() || sj.empty()) {
    rd.error(path + "/simplices", "expected a non-empty array of simplex lists, one per dimension");
    return std::nullopt;
  }
  std::vector<std::vector<Simplex>> simplices;
  for (std::size_t n = 0; n < sj.size(); ++n) {
    const std::string pn = path + "/simplices/" + std::to_string(n);
    if (!sj[n].is_array()) {
      rd.error(pn, "expected an array of simplices");
      return std::nullopt;
    }
    std::vector<Simplex> level;
    for (std::size_t i = 0; i < sj[n].size(); ++i) {
      const std::string pi = pn + "/" + std::to_string(i);
      const auto s = rd.int_list(sj[n][i], pi);
      if (!s) return std::nullopt;
      if (s->size() != n + 1) {
        rd.error(pi, "a " + std::to_string(n) + "-simplex lists " + std::to_string(n + 1) + " vertices");
        return std::nullopt;
      }
      level.push_back(*s);
    }
    simplices.push_back(std::move(level));
  }
  std::vector<std::vector<int>> action;
  if (j.contains("action")) {
    const json& aj = j.at("action");
    if (!aj.is_array()) {
      rd.error(path + "/action", "expected one vertex permutation per group element");
      return std::nullopt;
    }
    for (std::size_t g = 0; g < aj.size(); ++g) {
      const auto perm = rd.int_list(aj[g], path + "/action/" + std::to_string(g));
      if (!perm) return std::nullopt;
      action.push_back(*perm);
    }
  }
  try {
    return SimplicialGSet(name, *group, simplices, action);
  } catch (const Error& e) {
    rd.error(path, e.what());
    return std::nullopt;
  }
}

struct RawResolution {
  std::string kind;
  std::optional<int> depth;
};

std::optional<RawResolution> read_resolution(Reader& rd, const json& j, const std::string& path) {
  if (!rd.object(j, path, {"kind", "depth"})) return std::nullopt;
  if (!j.contains("kind")) {
    rd.error(path, "missing field kind");
    return std::nullopt;
  }
  RawResolution out;
  const auto kind = rd.string(j, path, "kind", {"bar", "periodic", "trivial"});
  if (!kind) return std::nullopt;
  out.kind = *kind;
  if (j.contains("depth")) {
    const auto d = rd.integer(j, path, "depth", 0, 1000);
    if (!d) return std::nullopt;
    out.depth = static_cast<int>(*d);
  }
  return out;
}

bool resolution_fits(Reader& rd, const std::string& kind, const FiniteGroup& g, const std::string& path) {
  if (kind == "periodic" && !(g == FiniteGroup::cyclic(g.order()))) {
    rd.error(path, "periodic resolutions need a cyclic group in its standard presentation");
    return false;
  }
  if (kind == "trivial" && g.order() != 1) {
    rd.error(path, "the trivial resolution needs the trivial group");
    return false;
  }
  return true;
}

// Rank of F_p for each kind, saturating.
std::size_t rank_of(const std::string& kind, int order, int p) {
  if (kind == "trivial") return p == 0 ? 1 : 0;
  if (kind == "periodic") return 1;
  std::size_t r = 1;
  for (int i = 0; i < p; ++i) {
    if (r > (std::size_t{1} << 40)) return r;
    r *= static_cast<std::size_t>(order);
  }
  return r;
}

std::vector<std::size_t> ranks(const ResolutionSpec& spec, int order) {
  std::vector<std::size_t> r;
  for (int p = 0; p <= spec.depth; ++p) r.push_back(rank_of(spec.kind, order, p));
  return r;
}

std::vector<std::size_t> tensor_ranks(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::vector<std::size_t> out(n, 0);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t i = 0; i <= p; ++i) out[p] += a[i] * b[p - i];
  return out;
}

// Largest dimension of a total degree of L, in internal degrees up to top.
std::size_t l_estimate(const Complex& c, const std::vector<std::size_t>& r, int top) {
  if (c.empty()) return 0;
  std::size_t best = 0;
  for (int m = c.lo(); m <= top; ++m) {
    std::size_t sum = 0;
    for (int q = c.lo(); q <= c.hi(); ++q) {
      const int p = m - q;
      if (p < 0 || p >= static_cast<int>(r.size())) continue;
      sum += r[static_cast<std::size_t>(p)] * c.dim(q);
    }
    best = std::max(best, sum);
  }
  return best;
}

std::size_t resolution_estimate(const std::vector<std::size_t>& r, int order) {
  std::size_t best = 0;
  for (std::size_t x : r) best = std::max(best, x * static_cast<std::size_t>(order));
  return best;
}

const std::map<std::string, TaskKind>& kind_table() {
  static const std::map<std::string, TaskKind> t = {
      {"cohomology", TaskKind::cohomology}, {"homology", TaskKind::homology}, {"hs", TaskKind::hs},
      {"weight_ss", TaskKind::weight_ss},   {"kunneth", TaskKind::kunneth},   {"cup", TaskKind::cup},
      {"cap", TaskKind::cap},               {"identity", TaskKind::identity}, {"duality", TaskKind::duality}};
  return t;
}

bool needs_map(const std::string& identity) {
  return identity == "cup_functoriality" || identity == "projection" || identity == "cross_naturality";
}

std::optional<std::vector<int>> read_pages(Reader& rd, const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) {
    rd.error(path, "expected a non-empty array of page numbers or \"inf\"");
    return std::nullopt;
  }
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].is_string() && j[i].get<std::string>() == "inf") {
      out.push_back(SpectralSequence::kInfinity);
    } else if (j[i].is_number_integer() && j[i].get<long long>() >= 1 && j[i].get<long long>() <= 100) {
      out.push_back(j[i].get<int>());
    } else {
      rd.error(path + "/" + std::to_string(i), "expected a page in [1, 100] or \"inf\"");
      return std::nullopt;
    }
  }
  return out;
}

struct Defaults {
  RawResolution resolution;
  int window = 4;
};

std::optional<Task> read_task(Reader& rd, const json& j, const std::string& path, const SimplicialGSet& space,
                              const Defaults& def, const Budgets& budgets) {
  if (!j.is_object()) {
    rd.error(path, "expected an object");
    return std::nullopt;
  }
  if (!j.contains("kind")) {
    rd.error(path, "missing field kind");
    return std::nullopt;
  }
  std::vector<std::string> kinds;
  for (const auto& [name, kind] : kind_table()) kinds.push_back(name);
  const auto kind_name = rd.string(j, path, "kind", kinds);
  if (!kind_name) return std::nullopt;
  Task t;
  t.kind = kind_table().at(*kind_name);

  std::set<std::string> allowed = {"kind", "window", "resolution"};
  switch (t.kind) {
    case TaskKind::hs: allowed.insert({"which", "pages"}); break;
    case TaskKind::weight_ss: allowed.insert({"variance", "pages"}); break;
    case TaskKind::kunneth: allowed.insert({"other", "other_resolution", "max_degree"}); break;
    case TaskKind::cup:
    case TaskKind::cap: allowed.insert("max_degree"); break;
    case TaskKind::identity: allowed.insert({"identities", "map"}); break;
    case TaskKind::duality: allowed.insert("page"); break;
    default: break;
  }
  if (!rd.object(j, path, allowed)) return std::nullopt;
  const std::size_t before = rd.count();

  t.window = def.window;
  if (j.contains("window")) {
    if (const auto w = rd.integer(j, path, "window", 0, 64)) t.window = static_cast<int>(*w);
  }
  RawResolution raw = def.resolution;
  if (j.contains("resolution")) {
    if (const auto r = read_resolution(rd, j.at("resolution"), path + "/resolution")) {
      raw = *r;
      if (!r->depth) raw.depth = def.resolution.depth;
    }
  }
  resolution_fits(rd, raw.kind, space.group(), path + "/resolution");

  if (t.kind == TaskKind::hs) {
    t.pages = {2, SpectralSequence::kInfinity};
    if (j.contains("which"))
      if (const auto w = rd.string(j, path, "which", {"first", "second"})) t.which = *w;
    if (t.which == "second") t.pages = {1, 2, SpectralSequence::kInfinity};
  }
  if (t.kind == TaskKind::weight_ss) {
    t.pages = {2, SpectralSequence::kInfinity};
    if (j.contains("variance"))
      if (const auto v = rd.string(j, path, "variance", {"cochain", "chain"})) t.variance = *v;
  }
  if (j.contains("pages"))
    if (const auto p = read_pages(rd, j.at("pages"), path + "/pages")) t.pages = *p;
  if (j.contains("page"))
    if (const auto p = rd.integer(j, path, "page", 1, 100)) t.page = static_cast<int>(*p);
  t.max_degree = t.window;
  if (j.contains("max_degree"))
    if (const auto m = rd.integer(j, path, "max_degree", 0, 64)) t.max_degree = static_cast<int>(*m);

  RawResolution other_raw;
  if (t.kind == TaskKind::kunneth) {
    if (!j.contains("other")) {
      rd.error(path, "missing field other");
    } else {
      t.other = read_space(rd, j.at("other"), path + "/other");
    }
    other_raw = raw;
    if (j.contains("other_resolution")) {
      if (const auto r = read_resolution(rd, j.at("other_resolution"), path + "/other_resolution")) other_raw = *r;
    }
    if (t.other) resolution_fits(rd, other_raw.kind, t.other->group(), path + "/other_resolution");
  }

  if (t.kind == TaskKind::identity) {
    if (j.contains("map")) {
      const json& m = j.at("map");
      const std::string pm = path + "/map";
      if (rd.object(m, pm, {"source", "vertex_map"})) {
        if (!m.contains("source") || !m.contains("vertex_map")) {
          rd.error(pm, "needs source and vertex_map");
        } else {
          const auto src = read_space(rd, m.at("source"), pm + "/source");
          const auto vm = rd.int_list(m.at("vertex_map"), pm + "/vertex_map");
          if (src && vm) {
            if (!(src->group() == space.group())) {
              rd.error(pm + "/source", "the map source must have the scenario's group");
            } else {
              try {
                (void)chain_map(*src, space, *vm);
                t.map = VertexMapSpec{*src, *vm};
              } catch (const Error& e) {
                rd.error(pm + "/vertex_map", e.what());
              }
            }
          }
        }
      }
    }
    if (j.contains("identities")) {
      const json& ids = j.at("identities");
      const auto names = identity_names();
      if (!ids.is_array() || ids.empty()) {
        rd.error(path + "/identities", "expected a non-empty array of identity names");
      } else {
        for (std::size_t i = 0; i < ids.size(); ++i) {
          const std::string pi = path + "/identities/" + std::to_string(i);
          if (!ids[i].is_string() ||
              std::find(names.begin(), names.end(), ids[i].get<std::string>()) == names.end()) {
            rd.error(pi, "unknown identity");
            continue;
          }
          const std::string name = ids[i].get<std::string>();
          if (needs_map(name) && !j.contains("map")) rd.error(pi, name + " needs a map");
          t.identities.push_back(name);
        }
      }
    } else {
      for (const auto& name : identity_names())
        if (!needs_map(name) || t.map) t.identities.push_back(name);
    }
  }
  if (rd.count() != before) return std::nullopt;

  // Depths and size estimates.
  const int order = space.group().order();
  const Complex cochains = space.cochains().complex();
  const Complex chains_internal = negate_degrees(space.chains()).complex();
  auto depth_for = [&](const RawResolution& r, int needed) { return r.depth ? *r.depth : needed; };
  const int need_cochain = required_depth(space.cochains(), t.window);
  const int need_chain = required_depth(space.chains(), t.window);
  std::size_t estimate = 0;
  t.resolution.kind = raw.kind;
  switch (t.kind) {
    case TaskKind::cohomology:
    case TaskKind::hs:
      t.resolution.depth = depth_for(raw, need_cochain);
      estimate = l_estimate(cochains, ranks(t.resolution, order), t.window + 1);
      break;
    case TaskKind::homology:
      t.resolution.depth = depth_for(raw, need_chain);
      estimate = l_estimate(chains_internal, ranks(t.resolution, order), t.window + 1);
      break;
    case TaskKind::weight_ss:
      t.resolution.depth = depth_for(raw, t.variance == "chain" ? need_chain : need_cochain);
      estimate = l_estimate(t.variance == "chain" ? chains_internal : cochains, ranks(t.resolution, order),
                            t.window + 1);
      break;
    case TaskKind::cup:
    case TaskKind::cap:
    case TaskKind::identity:
    case TaskKind::duality: {
      t.resolution.depth = depth_for(raw, std::max(need_cochain, need_chain));
      const auto r = ranks(t.resolution, order);
      estimate = std::max({l_estimate(cochains, r, t.window + 1), l_estimate(chains_internal, r, t.window + 1),
                           resolution_estimate(tensor_ranks(r, r), order * order)});
      if (t.map) {
        estimate = std::max({estimate, l_estimate(t.map->source.cochains().complex(), r, t.window + 1),
                             l_estimate(negate_degrees(t.map->source.chains()).complex(), r, t.window + 1)});
      }
      break;
    }
    case TaskKind::kunneth: {
      const GComplex prod = tensor(space.cochains(), t.other->cochains());
      const int need = required_depth(prod, t.max_degree);
      t.resolution.depth = depth_for(raw, need);
      t.other_resolution.kind = other_raw.kind;
      t.other_resolution.depth = depth_for(other_raw, need);
      const auto ra = ranks(t.resolution, order);
      const auto rb = ranks(t.other_resolution, t.other->group().order());
      estimate = std::max({l_estimate(cochains, ra, t.max_degree + 1),
                           l_estimate(t.other->cochains().complex(), rb, t.max_degree + 1),
                           l_estimate(prod.complex(), tensor_ranks(ra, rb), t.max_degree + 1)});
      if (t.other_resolution.depth > budgets.max_depth)
        rd.error(path + "/other_resolution", "depth " + std::to_string(t.other_resolution.depth) +
                                                  " exceeds max_depth " + std::to_string(budgets.max_depth));
      break;
    }
  }
  if (t.resolution.depth > budgets.max_depth)
    rd.error(path + "/resolution", "depth " + std::to_string(t.resolution.depth) + " exceeds max_depth " +
                                       std::to_string(budgets.max_depth));
  if (estimate > budgets.max_hom_dim)
    rd.error(path, "largest L degree has dimension about " + std::to_string(estimate) + ", over max_hom_dim " +
                       std::to_string(budgets.max_hom_dim));
  if (rd.count() != before) return std::nullopt;
  return t;
}

// ---------------------------------------------------------------- running

FreeResolution make_resolution(const ResolutionSpec& spec, const FiniteGroup& g) {
  if (spec.kind == "periodic") return periodic_resolution(g.order(), spec.depth);
  if (spec.kind == "trivial") return trivial_group_resolution(spec.depth);
  return bar_resolution(g, spec.depth);
}

json resolution_json(const ResolutionSpec& r) { return {{"kind", r.kind}, {"depth", r.depth}}; }

json page_name(int page) { return page == SpectralSequence::kInfinity ? json("inf") : json(page); }

// Entries of a labeled page with nonzero dimension, total degree in [lo, hi].
json page_json(const SpectralSequence& ss, int page, int lo, int hi) {
  json entries = json::array();
  int shown = page;
  if (page != SpectralSequence::kInfinity) {
    require(page >= ss.first_label_page(),
            "page " + std::to_string(page) + " is below the first page " + std::to_string(ss.first_label_page()));
    if (page > ss.last_label_page()) shown = SpectralSequence::kInfinity;
  }
  std::vector<LabeledEntry> es = ss.labeled_page(shown, lo, hi);
  std::sort(es.begin(), es.end(), [](const LabeledEntry& a, const LabeledEntry& b) {
    return std::pair(a.q, a.p) < std::pair(b.q, b.p);
  });
  for (const auto& e : es) {
    if (e.dim == 0) continue;
    json x = {{"p", e.p}, {"q", e.q}, {"dim", e.dim}};
    if (page != SpectralSequence::kInfinity && shown != SpectralSequence::kInfinity) x["d_rank"] = e.d_rank;
    entries.push_back(x);
  }
  return {{"page", page_name(page)}, {"entries", entries}};
}

json degrees_json(const std::vector<DegreeDim>& ds) {
  json out = json::array();
  for (const auto& d : ds) out.push_back({{"k", d.degree}, {"dim", d.dim}, {"certified", d.certified}});
  return out;
}

struct Certification {
  std::vector<int> degrees;
  int lo = 0, hi = 0;
  bool complete = true;
};

// Certified public degrees of the window, and whether all of them are.
Certification certification(const LComplex& l) {
  Certification c;
  c.degrees = l.certified_degrees();
  const Complex& src = l.internal_source().complex();
  const int lo = src.empty() ? 0 : src.lo();
  int expected = 0;
  for (int m = lo; m <= l.window(); ++m) ++expected;
  c.complete = static_cast<int>(c.degrees.size()) == expected;
  if (!c.degrees.empty()) {
    c.lo = c.degrees.front();
    c.hi = c.degrees.back();
  }
  return c;
}

void put_certification(json& out, const Certification& c) {
  out["certified_degrees"] = c.degrees;
  out["window_certified"] = c.complete;
}

json omega_json(const SpectralSequence& ss, const LComplex& l, const Certification& c) {
  json out = json::array();
  const bool chain = l.variance() == Variance::chain;
  for (int k : c.degrees) {
    json levels = json::array();
    for (int a = ss.amin(); a <= ss.amax() + 1; ++a)
      levels.push_back({{"level", chain ? -a : a}, {"dim", ss.omega_dim(a, l.internal_degree(k))}});
    out.push_back({{"k", k}, {"levels", levels}});
  }
  return out;
}

json identity_json(const IdentityResult& r) {
  json x = {{"name", r.name}, {"scenario", r.scenario}, {"pass", r.pass}, {"checked", r.checked}};
  if (!r.pass) x["witness"] = r.witness;
  return x;
}

// Fills `out` and returns false when a check in the task fails.
bool run_task(const Scenario& s, const Task& t, json& out) {
  const SimplicialGSet& x = s.space;
  out["resolution"] = resolution_json(t.resolution);
  out["window"] = t.window;
  switch (t.kind) {
    case TaskKind::cohomology:
    case TaskKind::homology: {
      const GComplex src = t.kind == TaskKind::cohomology ? x.cochains() : x.chains();
      const LComplex l(src, make_resolution(t.resolution, x.group()), t.window);
      put_certification(out, certification(l));
      out["degrees"] = degrees_json(equivariant_cohomology(l));
      return true;
    }
    case TaskKind::hs: {
      const LComplex l(x.cochains(), make_resolution(t.resolution, x.group()), t.window);
      const Certification c = certification(l);
      put_certification(out, c);
      out["which"] = t.which;
      const SpectralSequence ss = hochschild_serre(l, t.which == "first" ? HSKind::first : HSKind::second);
      json pages = json::array();
      for (int page : t.pages) pages.push_back(page_json(ss, page, c.lo, c.hi));
      out["pages"] = pages;
      return true;
    }
    case TaskKind::weight_ss: {
      const GComplex src = t.variance == "cochain" ? x.cochains() : x.chains();
      const LComplex l(src, make_resolution(t.resolution, x.group()), t.window);
      const Certification c = certification(l);
      put_certification(out, c);
      out["variance"] = t.variance;
      const SpectralSequence ss = equivariant_weight_ss(l, canonical_filtration(src.complex()));
      json pages = json::array();
      for (int page : t.pages) pages.push_back(page_json(ss, page, c.lo, c.hi));
      out["pages"] = pages;
      out["omega"] = omega_json(ss, l, c);
      return true;
    }
    case TaskKind::kunneth: {
      const KunnethReport k = kunneth_equivariant(x, make_resolution(t.resolution, x.group()), *t.other,
                                                  make_resolution(t.other_resolution, t.other->group()),
                                                  t.max_degree);
      out["other"] = t.other->name();
      out["other_resolution"] = resolution_json(t.other_resolution);
      out["max_degree"] = k.max_degree;
      out["e1_equal"] = k.e1_equal;
      out["pages_equal"] = k.pages_equal;
      out["einf_equal"] = k.einf_equal;
      out["omega_equal"] = k.omega_equal;
      out["iso_filtered"] = k.iso_filtered;
      out["iso_e1_bijective"] = k.iso_e1_bijective;
      if (!k.detail.empty()) out["detail"] = k.detail;
      return k.ok();
    }
    case TaskKind::cup:
    case TaskKind::cap: {
      const EquivariantProducts e(x, make_resolution(t.resolution, x.group()), t.window);
      const LComplex& k = e.cochains();
      const LComplex& c = e.chains();
      json table = json::array();
      out["max_degree"] = t.max_degree;
      if (t.kind == TaskKind::cup) {
        for (int a = 0; a <= t.max_degree; ++a)
          for (int b = 0; a + b <= t.max_degree; ++b) {
            if (!usable_degree(k, a) || !usable_degree(k, b) || !usable_degree(k, a + b)) continue;
            if (!e.cup_product().defined(a, b)) continue;
            const BitMatrix m = homology_product(e.cup_product(), a, b);
            table.push_back({{"a", a}, {"b", b}, {"rows", m.rows()}, {"cols", m.cols()}, {"rank", rank(m)}});
          }
      } else {
        const int d = x.dimension();
        for (int a = 0; a <= t.max_degree; ++a)
          for (int m = d; m >= -t.max_degree; --m) {
            if (!usable_degree(k, a) || !usable_degree(c, m) || !usable_degree(c, m - a)) continue;
            if (!e.cap_product().defined(a, -m)) continue;
            const BitMatrix mat = homology_product(e.cap_product(), a, -m);
            table.push_back({{"a", a}, {"m", m}, {"result", m - a}, {"rows", mat.rows()}, {"cols", mat.cols()},
                             {"rank", rank(mat)}});
          }
      }
      out["products"] = table;
      return true;
    }
    case TaskKind::identity: {
      const FreeResolution res = make_resolution(t.resolution, x.group());
      std::optional<EquivariantProducts> ey, ex;
      auto target = [&]() -> const EquivariantProducts& {
        if (!ey) ey.emplace(x, res, t.window);
        return *ey;
      };
      auto source = [&]() -> const EquivariantProducts& {
        if (!ex) ex.emplace(t.map->source, res, t.window);
        return *ex;
      };
      json results = json::array();
      bool ok = true;
      for (const auto& name : t.identities) {
        IdentityResult r;
        if (name == "commutativity") r = check_commutativity(target());
        else if (name == "associativity") r = check_associativity(target());
        else if (name == "pairing") r = check_pairing(x);
        else if (name == "mixed") r = check_mixed(target());
        else if (name == "page_additivity") r = check_page_additivity(target());
        else if (name == "cup_functoriality") r = check_cup_functoriality(source(), target(), t.map->vertex_map);
        else if (name == "projection") r = check_projection(source(), target(), t.map->vertex_map);
        else r = check_cross_naturality(t.map->source, x, t.map->vertex_map, res, t.window);
        ok = ok && r.pass;
        results.push_back(identity_json(r));
      }
      if (t.map) out["map_source"] = t.map->source.name();
      out["identities"] = results;
      return ok;
    }
    case TaskKind::duality: {
      const EquivariantProducts e(x, make_resolution(t.resolution, x.group()), t.window);
      const DualityReport d = equivariant_duality(e, e.fundamental_class(fundamental_chain(x)), t.page);
      json entries = json::array(), degrees = json::array();
      for (const auto& en : d.entries)
        entries.push_back({{"p", en.p}, {"q", en.q}, {"tp", en.tp}, {"tq", en.tq}, {"source_dim", en.source_dim},
                           {"target_dim", en.target_dim}, {"rank", en.rank}});
      for (const auto& dg : d.degrees)
        degrees.push_back({{"k", dg.k}, {"source_dim", dg.source_dim}, {"target_dim", dg.target_dim},
                           {"rank", dg.rank}});
      out["page"] = d.page;
      out["entries"] = entries;
      out["degrees"] = degrees;
      out["bijective"] = d.bijective;
      return d.bijective;
    }
  }
  return true;
}

// ---------------------------------------------------------------- rendering

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : std::string(w - s.size(), ' ') + s; }

void render_grid(std::ostringstream& os, const json& page) {
  os << "  page " << (page.at("page").is_string() ? std::string("inf") : std::to_string(page.at("page").get<int>()))
     << "\n";
  const json& es = page.at("entries");
  if (es.empty()) {
    os << "    (all zero)\n";
    return;
  }
  int pmin = 0, pmax = 0, qmin = 0, qmax = 0;
  bool first = true;
  std::map<std::pair<int, int>, std::size_t> dims;
  for (const auto& e : es) {
    const int p = e.at("p"), q = e.at("q");
    dims[{p, q}] = e.at("dim").get<std::size_t>();
    if (first) {
      pmin = pmax = p;
      qmin = qmax = q;
      first = false;
    }
    pmin = std::min(pmin, p);
    pmax = std::max(pmax, p);
    qmin = std::min(qmin, q);
    qmax = std::max(qmax, q);
  }
  const std::size_t w = 3;
  for (int q = qmax; q >= qmin; --q) {
    os << "  " << pad("q=" + std::to_string(q), 6) << " |";
    for (int p = pmin; p <= pmax; ++p) {
      const auto it = dims.find({p, q});
      os << pad(it == dims.end() ? "0" : std::to_string(it->second), w);
    }
    os << "\n";
  }
  os << "  " << std::string(7, ' ') << "+" << std::string(static_cast<std::size_t>(pmax - pmin + 1) * w, '-') << "\n";
  os << "  " << pad("p", 6) << "  ";
  for (int p = pmin; p <= pmax; ++p) os << pad(std::to_string(p), w);
  os << "\n";
}

void render_task(std::ostringstream& os, const json& t) {
  os << "[" << t.at("index").get<int>() << "] " << t.at("kind").get<std::string>();
  if (t.contains("which")) os << " " << t.at("which").get<std::string>();
  if (t.contains("variance")) os << " " << t.at("variance").get<std::string>();
  if (t.contains("resolution"))
    os << "  (" << t.at("resolution").at("kind").get<std::string>() << " depth "
       << t.at("resolution").at("depth").get<int>() << ", window " << t.at("window").get<int>() << ")";
  os << "  " << t.at("status").get<std::string>() << "\n";
  if (t.contains("error")) os << "  error: " << t.at("error").get<std::string>() << "\n";
  if (t.contains("window_certified") && !t.at("window_certified").get<bool>())
    os << "  window not fully certified\n";
  if (t.contains("degrees") && t.at("kind") != "duality") {
    os << "  " << pad("k", 6) << " |";
    for (const auto& d : t.at("degrees")) os << pad(std::to_string(d.at("k").get<int>()), 4);
    os << "\n  " << pad("dim", 6) << " |";
    for (const auto& d : t.at("degrees"))
      os << pad(std::to_string(d.at("dim").get<std::size_t>()) + (d.at("certified").get<bool>() ? "" : "?"), 4);
    os << "\n";
  }
  if (t.contains("pages"))
    for (const auto& p : t.at("pages")) render_grid(os, p);
  if (t.contains("omega"))
    for (const auto& o : t.at("omega")) {
      os << "  omega k=" << o.at("k").get<int>() << ":";
      for (const auto& l : o.at("levels"))
        os << " " << l.at("level").get<int>() << ":" << l.at("dim").get<std::size_t>();
      os << "\n";
    }
  if (t.contains("products"))
    for (const auto& p : t.at("products")) {
      if (p.contains("b"))
        os << "  H^" << p.at("a").get<int>() << " x H^" << p.at("b").get<int>();
      else
        os << "  H^" << p.at("a").get<int>() << " x H_" << p.at("m").get<int>();
      os << "  " << p.at("rows").get<std::size_t>() << " -> " << p.at("cols").get<std::size_t>() << ", rank "
         << p.at("rank").get<std::size_t>() << "\n";
    }
  if (t.contains("identities"))
    for (const auto& i : t.at("identities")) {
      os << "  " << (i.at("pass").get<bool>() ? "pass" : "FAIL") << "  " << i.at("name").get<std::string>() << " ("
         << i.at("checked").get<std::size_t>() << " checks)\n";
      if (i.contains("witness")) os << "        " << i.at("witness").get<std::string>() << "\n";
    }
  if (t.at("kind") == "kunneth" && t.contains("e1_equal")) {
    for (const char* key : {"e1_equal", "pages_equal", "einf_equal", "omega_equal", "iso_filtered", "iso_e1_bijective"})
      os << "  " << key << ": " << (t.at(key).get<bool>() ? "yes" : "no") << "\n";
  }
  if (t.at("kind") == "duality" && t.contains("entries")) {
    for (const auto& e : t.at("entries"))
      os << "  (" << e.at("p").get<int>() << "," << e.at("q").get<int>() << ") -> (" << e.at("tp").get<int>() << ","
         << e.at("tq").get<int>() << ")  " << e.at("source_dim").get<std::size_t>() << " -> "
         << e.at("target_dim").get<std::size_t>() << ", rank " << e.at("rank").get<std::size_t>() << "\n";
    os << "  bijective: " << (t.at("bijective").get<bool>() ? "yes" : "no") << "\n";
  }
  if (t.contains("elapsed_ms")) os << "  " << t.at("elapsed_ms").get<long long>() << " ms\n";
}

}  // namespace

// ---------------------------------------------------------------- public

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string task_kind_name(TaskKind k) {
  for (const auto& [name, kind] : kind_table())
    if (kind == k) return name;
  return "?";
}

std::vector<std::string> identity_names() {
  return {"commutativity", "associativity", "cup_functoriality", "pairing",
          "mixed",         "projection",    "cross_naturality",  "page_additivity"};
}

ParseResult parse(const json& doc) {
  ParseResult out;
  Reader rd(out.issues);
  if (!rd.object(doc, "", {"version", "name", "space", "resolution", "window", "budgets", "output", "tasks"}))
    return out;
  for (const char* key : {"version", "name", "space", "tasks"})
    if (!doc.contains(key)) rd.error("", std::string("missing field ") + key);
  if (!out.issues.empty()) return out;

  Scenario s;
  s.document = doc;
  s.digest = fnv1a64(doc.dump());
  if (const auto v = rd.integer(doc, "", "version", 0, 1 << 20); v && *v != kSchemaVersion)
    rd.error("/version", "unsupported schema version " + std::to_string(*v) + ", expected " +
                             std::to_string(kSchemaVersion));
  if (const auto n = rd.string(doc, "", "name")) s.name = *n;
  if (doc.contains("budgets")) {
    const json& b = doc.at("budgets");
    if (rd.object(b, "/budgets", {"max_depth", "max_hom_dim"})) {
      if (b.contains("max_depth"))
        if (const auto m = rd.integer(b, "/budgets", "max_depth", 0, 1000)) s.budgets.max_depth = static_cast<int>(*m);
      if (b.contains("max_hom_dim"))
        if (const auto m = rd.integer(b, "/budgets", "max_hom_dim", 1, 1 << 24))
          s.budgets.max_hom_dim = static_cast<std::size_t>(*m);
    }
  }
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    if (rd.object(o, "/output", {"timing"}) && o.contains("timing"))
      if (const auto t = rd.boolean(o, "/output", "timing")) s.timing = *t;
  }
  const auto space = read_space(rd, doc.at("space"), "/space");
  Defaults def;
  if (space) def.resolution.kind = space->group() == FiniteGroup::cyclic(space->group().order()) ? "periodic" : "bar";
  if (doc.contains("window"))
    if (const auto w = rd.integer(doc, "", "window", 0, 64)) def.window = static_cast<int>(*w);
  if (doc.contains("resolution")) {
    if (const auto r = read_resolution(rd, doc.at("resolution"), "/resolution")) {
      def.resolution = *r;
      if (space) resolution_fits(rd, r->kind, space->group(), "/resolution");
    }
  }
  if (!doc.at("tasks").is_array()) rd.error("/tasks", "expected an array");
  if (!out.issues.empty() || !space) return out;
  s.space = *space;
  const json& tasks = doc.at("tasks");
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    try {
      if (auto t = read_task(rd, tasks[i], "/tasks/" + std::to_string(i), s.space, def, s.budgets))
        s.tasks.push_back(std::move(*t));
    } catch (const std::exception& e) {
      rd.error("/tasks/" + std::to_string(i), e.what());
    }
  }
  if (out.issues.empty()) out.scenario = std::move(s);
  return out;
}

ParseResult parse_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    ParseResult out;
    out.issues.push_back({"", "byte " + std::to_string(e.byte) + ": malformed JSON"});
    return out;
  }
  return parse(doc);
}

ParseResult parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ParseResult out;
    out.issues.push_back({"", "cannot read " + path});
    return out;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

Report run(const Scenario& s, int jobs) {
  const std::size_t n = s.tasks.size();
  std::vector<json> results(n);
  std::vector<char> ok(n, 1);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < n; i = next++) {
      const Task& t = s.tasks[i];
      json out = {{"index", static_cast<int>(i)}, {"kind", task_kind_name(t.kind)}};
      const auto start = std::chrono::steady_clock::now();
      try {
        const bool pass = run_task(s, t, out);
        out["status"] = pass ? "ok" : "failed";
        ok[i] = pass;
      } catch (const std::exception& e) {
        out["status"] = "error";
        out["error"] = e.what();
        ok[i] = 0;
      }
      if (s.timing)
        out["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - start)
                                .count();
      results[i] = std::move(out);
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  Report r;
  json space = {{"name", s.space.name()},
                {"group_order", s.space.group().order()},
                {"dimension", s.space.dimension()}};
  json counts = json::array();
  for (int d = 0; d <= s.space.dimension(); ++d) counts.push_back(s.space.count(d));
  space["simplices"] = counts;
  std::size_t failed = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (!ok[i]) ++failed;
  r.ok = failed == 0;
  r.json = {{"schema_version", kSchemaVersion},
            {"scenario", s.name},
            {"input_digest", hex64(s.digest)},
            {"space", space},
            {"tasks", results},
            {"summary", {{"tasks", n}, {"failed", failed}}}};
  if (n == 0) r.json["tasks"] = json::array();
  return r;
}

std::string render(const Report& r, Format f) {
  if (f == Format::json) return r.json.dump(2) + "\n";
  std::ostringstream os;
  const json& j = r.json;
  if (j.contains("scenario")) {
    os << "scenario " << j.at("scenario").get<std::string>() << "  digest " << j.at("input_digest").get<std::string>()
       << "\n";
    const json& sp = j.at("space");
    os << "space " << sp.at("name").get<std::string>() << ", |G| = " << sp.at("group_order").get<int>()
       << ", dimension " << sp.at("dimension").get<int>() << "\n";
  }
  if (j.contains("tasks"))
    for (const auto& t : j.at("tasks")) {
      os << "\n";
      render_task(os, t);
    }
  if (j.contains("summary"))
    os << "\n" << j.at("summary").at("tasks").get<std::size_t>() << " tasks, "
       << j.at("summary").at("failed").get<std::size_t>() << " failed\n";
  return os.str();
}

}  // namespace eqw::scenario
