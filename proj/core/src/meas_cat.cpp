#include "itolab/meas_cat.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "itolab/error.hpp"

namespace itolab::meas {

namespace {

void require_carrier(std::size_t n) {
  require(n <= kMaxPoints, ErrorCode::kSizeLimit,
          "carrier of " + std::to_string(n) + " points exceeds the limit of " + std::to_string(kMaxPoints));
}

bool has_bit(Mask set, std::size_t p) { return (set >> p) & 1u; }

std::vector<Mask> all_unions(const std::vector<Mask>& atoms) {
  require(atoms.size() <= kMaxPoints, ErrorCode::kSizeLimit, "too many atoms");
  std::vector<Mask> out;
  out.reserve(std::size_t{1} << atoms.size());
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << atoms.size()); ++pick) {
    Mask set = 0;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      if ((pick >> k) & 1u) set |= atoms[k];
    }
    out.push_back(set);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Classes of points with identical membership across the generators.
std::vector<Mask> signature_atoms(std::size_t n, std::span<const Mask> generators) {
  std::map<std::vector<bool>, Mask> classes;
  for (std::size_t p = 0; p < n; ++p) {
    std::vector<bool> signature;
    signature.reserve(generators.size());
    for (Mask g : generators) signature.push_back(has_bit(g, p));
    classes[signature] |= Mask{1} << p;
  }
  std::vector<Mask> atoms;
  for (const auto& [sig, atom] : classes) atoms.push_back(atom);
  return atoms;
}

std::vector<Mask> normalized(std::vector<Mask> family) {
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  return family;
}

std::uint64_t checked_power(std::size_t base, std::size_t exponent) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && out > kSearchLimit * 16 / base) return kSearchLimit * 16 + 1;
    out *= base;
  }
  return out;
}

void require_search(std::size_t base, std::size_t exponent, const std::string& what) {
  require(checked_power(base, exponent) <= kSearchLimit, ErrorCode::kSizeLimit,
          what + ": mediator search space " + std::to_string(base) + "^" + std::to_string(exponent) +
              " exceeds " + std::to_string(kSearchLimit));
}

std::vector<Table> measurable_maps(const FiniteMeasurableSpace& domain, const FiniteMeasurableSpace& codomain) {
  std::vector<Table> out;
  for_each_function(domain.size(), codomain.size(), [&](const Table& t) {
    if (is_measurable(domain, codomain, t)) out.push_back(t);
  });
  return out;
}

std::uint64_t encode(const Table& t, std::size_t base) {
  std::uint64_t key = 0;
  for (std::size_t i = t.size(); i-- > 0;) key = key * base + t[i];
  return key;
}

std::string table_text(const Table& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + "]";
}

std::vector<std::string> index_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

void require_parallel(const MeasurableMap& f, const MeasurableMap& g, const char* op) {
  require(f.domain() == g.domain() && f.codomain() == g.codomain(), ErrorCode::kInvalidArgument,
          std::string(op) + ": maps are not parallel");
}

std::string set_text(const FiniteMeasurableSpace& space, Mask set) {
  std::string s = "{";
  bool first = true;
  for (std::size_t p = 0; p < space.size(); ++p) {
    if (has_bit(set, p)) {
      s += (first ? "" : ",") + space.points()[p];
      first = false;
    }
  }
  return s + "}";
}

}  // namespace

std::vector<Mask> sigma_generate(std::size_t n, std::span<const Mask> generators) {
  require_carrier(n);
  const Mask full = full_mask(n);
  for (Mask g : generators) {
    require((g & ~full) == 0, ErrorCode::kInvalidArgument, "generator is not a subset of the carrier");
  }
  if (n == 0) return {0};
  return all_unions(signature_atoms(n, generators));
}

bool is_sigma_algebra(std::size_t n, std::span<const Mask> family_in) {
  if (n > kMaxPoints) return false;
  const Mask full = full_mask(n);
  std::vector<Mask> family = normalized({family_in.begin(), family_in.end()});
  if (family.size() != family_in.size()) return false;
  auto has = [&](Mask s) { return std::binary_search(family.begin(), family.end(), s); };
  if (!has(0) || !has(full)) return false;
  for (Mask s : family) {
    if ((s & ~full) != 0 || !has(full & ~s)) return false;
  }
  // Candidate atoms: the intersection of all members containing p.
  std::vector<Mask> atom_of(n, full);
  for (Mask s : family) {
    for (std::size_t p = 0; p < n; ++p) {
      if (has_bit(s, p)) atom_of[p] &= s;
    }
  }
  std::vector<Mask> atoms = normalized(atom_of);
  Mask seen = 0;
  for (Mask a : atoms) {
    if ((a & seen) != 0) return false;
    seen |= a;
  }
  if (atoms.size() >= 32 || family.size() != (std::size_t{1} << atoms.size())) return false;
  for (Mask s : family) {
    Mask rebuilt = 0;
    for (std::size_t p = 0; p < n; ++p) {
      if (has_bit(s, p)) rebuilt |= atom_of[p];
    }
    if (rebuilt != s) return false;
  }
  return true;
}

FiniteMeasurableSpace::FiniteMeasurableSpace(std::vector<std::string> points, std::vector<Mask> sigma)
    : points_(std::move(points)), sigma_(normalized(std::move(sigma))) {
  require_carrier(points_.size());
  require(is_sigma_algebra(points_.size(), sigma_), ErrorCode::kInvalidArgument,
          "family is not a sigma-algebra on " + std::to_string(points_.size()) + " points");
  std::vector<Mask> atom_of(size(), full());
  for (Mask s : sigma_) {
    for (std::size_t p = 0; p < size(); ++p) {
      if (has_bit(s, p)) atom_of[p] &= s;
    }
  }
  atoms_ = normalized(std::move(atom_of));
}

FiniteMeasurableSpace FiniteMeasurableSpace::generated(std::vector<std::string> points,
                                                       std::span<const Mask> generators) {
  auto sigma = sigma_generate(points.size(), generators);
  return FiniteMeasurableSpace(std::move(points), std::move(sigma));
}

FiniteMeasurableSpace FiniteMeasurableSpace::on_indices(std::size_t n, std::vector<Mask> sigma) {
  return FiniteMeasurableSpace(index_labels(n), std::move(sigma));
}

bool FiniteMeasurableSpace::contains(Mask set) const { return std::binary_search(sigma_.begin(), sigma_.end(), set); }

FiniteMeasurableSpace discrete_functor(std::vector<std::string> points) {
  const std::size_t n = points.size();
  require_carrier(n);
  std::vector<Mask> singletons;
  for (std::size_t p = 0; p < n; ++p) singletons.push_back(Mask{1} << p);
  return FiniteMeasurableSpace::generated(std::move(points), singletons);
}

FiniteMeasurableSpace indiscrete_functor(std::vector<std::string> points) {
  return FiniteMeasurableSpace::generated(std::move(points), {});
}

Mask preimage(const Table& table, Mask set, std::size_t codomain_size) {
  Mask out = 0;
  for (std::size_t p = 0; p < table.size(); ++p) {
    if (table[p] < codomain_size && has_bit(set, table[p])) out |= Mask{1} << p;
  }
  return out;
}

bool is_measurable(const FiniteMeasurableSpace& domain, const FiniteMeasurableSpace& codomain, const Table& table) {
  if (table.size() != domain.size()) return false;
  for (std::size_t v : table) {
    if (v >= codomain.size()) return false;
  }
  // Preimages commute with unions, so the atoms of the codomain suffice.
  for (Mask atom : codomain.atoms()) {
    if (!domain.contains(preimage(table, atom, codomain.size()))) return false;
  }
  return true;
}

MeasurableMap::MeasurableMap(FiniteMeasurableSpace domain, FiniteMeasurableSpace codomain, Table table)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table)) {
  require(table_.size() == domain_.size(), ErrorCode::kInvalidArgument, "map table size differs from domain size");
  for (std::size_t v : table_) {
    require(v < codomain_.size(), ErrorCode::kInvalidArgument, "map value outside the codomain");
  }
  require(is_measurable(domain_, codomain_, table_), ErrorCode::kInvalidArgument,
          "map " + table_text(table_) + " is not measurable");
}

MeasurableMap compose(const MeasurableMap& g, const MeasurableMap& f) {
  require(f.codomain() == g.domain(), ErrorCode::kInvalidArgument, "compose: codomain of f is not domain of g");
  Table t(f.table().size());
  for (std::size_t p = 0; p < t.size(); ++p) t[p] = g(f(p));
  return MeasurableMap(f.domain(), g.codomain(), std::move(t));
}

std::uint64_t count_functions(std::size_t m, std::size_t n) { return checked_power(n, m); }

std::uint64_t count_measurable_maps(const FiniteMeasurableSpace& domain, const FiniteMeasurableSpace& codomain) {
  require_search(codomain.size(), domain.size(), "count_measurable_maps");
  std::uint64_t count = 0;
  for_each_function(domain.size(), codomain.size(), [&](const Table& t) {
    if (is_measurable(domain, codomain, t)) ++count;
  });
  return count;
}

Cone product_space(const FiniteMeasurableSpace& a, const FiniteMeasurableSpace& b) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  require_carrier(na * nb);
  std::vector<std::string> points;
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) points.push_back("(" + a.points()[i] + "," + b.points()[j] + ")");
  }
  std::vector<Mask> rectangles;
  for (Mask sa : a.sigma()) {
    for (Mask sb : b.sigma()) {
      Mask r = 0;
      for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
          if (has_bit(sa, i) && has_bit(sb, j)) r |= Mask{1} << (i * nb + j);
        }
      }
      rectangles.push_back(r);
    }
  }
  auto space = FiniteMeasurableSpace::generated(std::move(points), rectangles);
  Table p1(na * nb), p2(na * nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      p1[i * nb + j] = i;
      p2[i * nb + j] = j;
    }
  }
  Cone cone{space, {}};
  cone.legs.emplace_back(space, a, std::move(p1));
  cone.legs.emplace_back(space, b, std::move(p2));
  return cone;
}

Cone coproduct_space(const FiniteMeasurableSpace& a, const FiniteMeasurableSpace& b) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  require_carrier(na + nb);
  std::vector<std::string> points;
  for (const auto& p : a.points()) points.push_back("L:" + p);
  for (const auto& p : b.points()) points.push_back("R:" + p);
  std::vector<Mask> generators;
  for (Mask s : a.sigma()) generators.push_back(s);
  for (Mask s : b.sigma()) generators.push_back(static_cast<Mask>(s << na));
  auto space = FiniteMeasurableSpace::generated(std::move(points), generators);
  Table i1(na), i2(nb);
  std::iota(i1.begin(), i1.end(), std::size_t{0});
  std::iota(i2.begin(), i2.end(), na);
  Cone cone{space, {}};
  cone.legs.emplace_back(a, space, std::move(i1));
  cone.legs.emplace_back(b, space, std::move(i2));
  return cone;
}

Cone equalizer(const MeasurableMap& f, const MeasurableMap& g) {
  require_parallel(f, g, "equalizer");
  const auto& a = f.domain();
  Table inclusion;
  std::vector<std::string> points;
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (f(x) == g(x)) {
      inclusion.push_back(x);
      points.push_back(a.points()[x]);
    }
  }
  std::vector<Mask> trace;
  for (Mask s : a.sigma()) {
    Mask t = 0;
    for (std::size_t k = 0; k < inclusion.size(); ++k) {
      if (has_bit(s, inclusion[k])) t |= Mask{1} << k;
    }
    trace.push_back(t);
  }
  FiniteMeasurableSpace space(std::move(points), std::move(trace));
  Cone cone{space, {}};
  cone.legs.emplace_back(space, a, std::move(inclusion));
  return cone;
}

Cone coequalizer(const MeasurableMap& f, const MeasurableMap& g) {
  require_parallel(f, g, "coequalizer");
  const auto& b = f.codomain();
  std::vector<std::size_t> parent(b.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t x = 0; x < f.domain().size(); ++x) {
    const std::size_t r1 = find(f(x));
    const std::size_t r2 = find(g(x));
    if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
  }
  std::map<std::size_t, std::size_t> class_index;
  Table quotient(b.size());
  std::vector<std::string> points;
  std::vector<Mask> members;
  for (std::size_t y = 0; y < b.size(); ++y) {
    const std::size_t root = find(y);
    auto [it, inserted] = class_index.emplace(root, class_index.size());
    if (inserted) {
      points.emplace_back();
      members.push_back(0);
    }
    quotient[y] = it->second;
    members[it->second] |= Mask{1} << y;
  }
  for (std::size_t c = 0; c < points.size(); ++c) points[c] = "[" + set_text(b, members[c]).substr(1);
  for (auto& p : points) p.back() = ']';
  std::vector<Mask> sigma;
  for (Mask t = 0; t <= full_mask(points.size()); ++t) {
    if (b.contains(preimage(quotient, t, points.size()))) sigma.push_back(t);
    if (t == full_mask(points.size())) break;
  }
  FiniteMeasurableSpace space(std::move(points), std::move(sigma));
  Cone cone{space, {}};
  cone.legs.emplace_back(b, space, std::move(quotient));
  return cone;
}

FiniteMeasurableSpace final_object() { return FiniteMeasurableSpace({"*"}, {0u, 1u}); }

FiniteMeasurableSpace initial_object() { return FiniteMeasurableSpace({}, {0u}); }

Cone chain_limit(const std::vector<MeasurableMap>& maps) {
  require(!maps.empty(), ErrorCode::kInvalidArgument, "chain_limit needs at least one map");
  std::vector<FiniteMeasurableSpace> objects{maps.front().codomain()};
  for (std::size_t i = 0; i < maps.size(); ++i) {
    require(maps[i].codomain() == objects.back(), ErrorCode::kInvalidArgument,
            "chain_limit: maps do not form a chain");
    objects.push_back(maps[i].domain());
  }
  // A thread is determined by its last coordinate.
  const auto& last = objects.back();
  std::vector<Table> threads;
  std::vector<std::string> points;
  for (std::size_t x = 0; x < last.size(); ++x) {
    Table thread(objects.size());
    thread.back() = x;
    for (std::size_t i = maps.size(); i-- > 0;) thread[i] = maps[i](thread[i + 1]);
    std::string label = "(";
    for (std::size_t i = 0; i < thread.size(); ++i) label += (i ? "," : "") + objects[i].points()[thread[i]];
    points.push_back(label + ")");
    threads.push_back(std::move(thread));
  }
  std::vector<Mask> generators;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    Table projection(threads.size());
    for (std::size_t t = 0; t < threads.size(); ++t) projection[t] = threads[t][i];
    for (Mask s : objects[i].sigma()) generators.push_back(preimage(projection, s, objects[i].size()));
  }
  auto space = FiniteMeasurableSpace::generated(std::move(points), generators);
  Cone cone{space, {}};
  for (std::size_t i = 0; i < objects.size(); ++i) {
    Table projection(threads.size());
    for (std::size_t t = 0; t < threads.size(); ++t) projection[t] = threads[t][i];
    cone.legs.emplace_back(space, objects[i], std::move(projection));
  }
  return cone;
}

Cone chain_colimit(const std::vector<MeasurableMap>& maps) {
  require(!maps.empty(), ErrorCode::kInvalidArgument, "chain_colimit needs at least one map");
  std::vector<FiniteMeasurableSpace> objects{maps.front().domain()};
  for (const auto& m : maps) {
    require(m.domain() == objects.back(), ErrorCode::kInvalidArgument, "chain_colimit: maps do not form a chain");
    objects.push_back(m.codomain());
  }
  // Every element is eventually identified with its image in the last object.
  const auto& last = objects.back();
  Cone cone{last, {}};
  std::vector<Table> to_last(objects.size());
  to_last.back().resize(last.size());
  std::iota(to_last.back().begin(), to_last.back().end(), std::size_t{0});
  for (std::size_t i = maps.size(); i-- > 0;) {
    to_last[i].resize(objects[i].size());
    for (std::size_t x = 0; x < objects[i].size(); ++x) to_last[i][x] = to_last[i + 1][maps[i](x)];
  }
  // Final sigma-algebra: T measurable iff every injection pulls it back to a measurable set.
  std::vector<Mask> sigma;
  for (Mask t = 0;; ++t) {
    bool ok = true;
    for (std::size_t i = 0; i < objects.size() && ok; ++i) {
      ok = objects[i].contains(preimage(to_last[i], t, last.size()));
    }
    if (ok) sigma.push_back(t);
    if (t == last.full()) break;
  }
  cone.apex = FiniteMeasurableSpace(last.points(), std::move(sigma));
  for (std::size_t i = 0; i < objects.size(); ++i) cone.legs.emplace_back(objects[i], cone.apex, to_last[i]);
  return cone;
}

std::string to_string(UniversalKind kind) {
  switch (kind) {
    case UniversalKind::kProduct:
      return "product";
    case UniversalKind::kCoproduct:
      return "coproduct";
    case UniversalKind::kEqualizer:
      return "equalizer";
    case UniversalKind::kCoequalizer:
      return "coequalizer";
    case UniversalKind::kFinal:
      return "final";
    case UniversalKind::kInitial:
      return "initial";
  }
  return "product";
}

UniversalKind parse_universal_kind(const std::string& text) {
  for (auto kind : {UniversalKind::kProduct, UniversalKind::kCoproduct, UniversalKind::kEqualizer,
                    UniversalKind::kCoequalizer, UniversalKind::kFinal, UniversalKind::kInitial}) {
    if (to_string(kind) == text) return kind;
  }
  fail(ErrorCode::kParse, "unknown universal property '" + text + "'");
}

UniversalWitness verify_universal_property(UniversalKind kind, std::span<const FiniteMeasurableSpace> spaces,
                                           std::span<const MeasurableMap> maps,
                                           std::span<const FiniteMeasurableSpace> test_objects) {
  UniversalWitness w;
  w.kind = kind;
  w.test_objects = test_objects.size();
  auto record = [&](const std::string& msg) {
    if (w.holds) w.failure = msg;
    w.holds = false;
  };

  switch (kind) {
    case UniversalKind::kProduct: {
      require(spaces.size() == 2, ErrorCode::kInvalidArgument, "product needs two spaces");
      const auto& a = spaces[0];
      const auto& b = spaces[1];
      const Cone limit = product_space(a, b);
      for (const auto& c : test_objects) {
        require_search(limit.apex.size(), c.size(), "product");
        std::unordered_map<std::uint64_t, int> mediators;
        const std::uint64_t shift = checked_power(b.size(), c.size());
        for_each_function(c.size(), limit.apex.size(), [&](const Table& u) {
          ++w.candidates_searched;
          if (!is_measurable(c, limit.apex, u)) return;
          Table f(u.size()), g(u.size());
          for (std::size_t x = 0; x < u.size(); ++x) {
            f[x] = limit.legs[0](u[x]);
            g[x] = limit.legs[1](u[x]);
          }
          ++mediators[encode(f, a.size()) * shift + encode(g, b.size())];
        });
        const auto fs = measurable_maps(c, a);
        const auto gs = measurable_maps(c, b);
        for (const auto& f : fs) {
          for (const auto& g : gs) {
            ++w.cones;
            const auto it = mediators.find(encode(f, a.size()) * shift + encode(g, b.size()));
            const int n = it == mediators.end() ? 0 : it->second;
            if (n != 1) {
              record("product cone " + table_text(f) + "," + table_text(g) + " from " + describe(c) + " has " +
                     std::to_string(n) + " mediators");
            }
          }
        }
      }
      break;
    }
    case UniversalKind::kCoproduct: {
      require(spaces.size() == 2, ErrorCode::kInvalidArgument, "coproduct needs two spaces");
      const auto& a = spaces[0];
      const auto& b = spaces[1];
      const Cone colimit = coproduct_space(a, b);
      for (const auto& c : test_objects) {
        require_search(c.size(), colimit.apex.size(), "coproduct");
        std::unordered_map<std::uint64_t, int> mediators;
        const std::uint64_t shift = checked_power(c.size(), b.size());
        for_each_function(colimit.apex.size(), c.size(), [&](const Table& u) {
          ++w.candidates_searched;
          if (!is_measurable(colimit.apex, c, u)) return;
          Table f(a.size()), g(b.size());
          for (std::size_t x = 0; x < a.size(); ++x) f[x] = u[colimit.legs[0](x)];
          for (std::size_t y = 0; y < b.size(); ++y) g[y] = u[colimit.legs[1](y)];
          ++mediators[encode(f, c.size()) * shift + encode(g, c.size())];
        });
        for (const auto& f : measurable_maps(a, c)) {
          for (const auto& g : measurable_maps(b, c)) {
            ++w.cones;
            const auto it = mediators.find(encode(f, c.size()) * shift + encode(g, c.size()));
            const int n = it == mediators.end() ? 0 : it->second;
            if (n != 1) {
              record("coproduct cocone into " + describe(c) + " has " + std::to_string(n) + " mediators");
            }
          }
        }
      }
      break;
    }
    case UniversalKind::kEqualizer: {
      require(maps.size() == 2, ErrorCode::kInvalidArgument, "equalizer needs two maps");
      const auto& f = maps[0];
      const auto& g = maps[1];
      const Cone limit = equalizer(f, g);
      const auto& a = f.domain();
      for (const auto& c : test_objects) {
        require_search(limit.apex.size(), c.size(), "equalizer");
        std::unordered_map<std::uint64_t, int> mediators;
        for_each_function(c.size(), limit.apex.size(), [&](const Table& u) {
          ++w.candidates_searched;
          if (!is_measurable(c, limit.apex, u)) return;
          Table h(u.size());
          for (std::size_t x = 0; x < u.size(); ++x) h[x] = limit.legs[0](u[x]);
          ++mediators[encode(h, a.size())];
        });
        for (const auto& h : measurable_maps(c, a)) {
          bool equalized = true;
          for (std::size_t x = 0; x < h.size(); ++x) equalized = equalized && f(h[x]) == g(h[x]);
          if (!equalized) continue;
          ++w.cones;
          const auto it = mediators.find(encode(h, a.size()));
          const int n = it == mediators.end() ? 0 : it->second;
          if (n != 1) record("equalizer cone " + table_text(h) + " has " + std::to_string(n) + " mediators");
        }
      }
      break;
    }
    case UniversalKind::kCoequalizer: {
      require(maps.size() == 2, ErrorCode::kInvalidArgument, "coequalizer needs two maps");
      const auto& f = maps[0];
      const auto& g = maps[1];
      const Cone colimit = coequalizer(f, g);
      const auto& b = f.codomain();
      for (const auto& c : test_objects) {
        require_search(c.size(), colimit.apex.size(), "coequalizer");
        std::unordered_map<std::uint64_t, int> mediators;
        for_each_function(colimit.apex.size(), c.size(), [&](const Table& u) {
          ++w.candidates_searched;
          if (!is_measurable(colimit.apex, c, u)) return;
          Table h(b.size());
          for (std::size_t y = 0; y < b.size(); ++y) h[y] = u[colimit.legs[0](y)];
          ++mediators[encode(h, c.size())];
        });
        for (const auto& h : measurable_maps(b, c)) {
          bool coequalized = true;
          for (std::size_t x = 0; x < f.domain().size(); ++x) coequalized = coequalized && h[f(x)] == h[g(x)];
          if (!coequalized) continue;
          ++w.cones;
          const auto it = mediators.find(encode(h, c.size()));
          const int n = it == mediators.end() ? 0 : it->second;
          if (n != 1) record("coequalizer cocone " + table_text(h) + " has " + std::to_string(n) + " mediators");
        }
      }
      break;
    }
    case UniversalKind::kFinal: {
      const auto one = final_object();
      for (const auto& c : test_objects) {
        require_search(1, c.size(), "final");
        std::uint64_t n = 0;
        for_each_function(c.size(), 1, [&](const Table& u) {
          ++w.candidates_searched;
          if (is_measurable(c, one, u)) ++n;
        });
        ++w.cones;
        if (n != 1) record(describe(c) + " has " + std::to_string(n) + " maps to the one-point space");
      }
      break;
    }
    case UniversalKind::kInitial: {
      const auto empty = initial_object();
      for (const auto& c : test_objects) {
        std::uint64_t n = 0;
        for_each_function(0, c.size(), [&](const Table& u) {
          ++w.candidates_searched;
          if (is_measurable(empty, c, u)) ++n;
        });
        ++w.cones;
        if (n != 1) record("empty space has " + std::to_string(n) + " maps to " + describe(c));
      }
      break;
    }
  }
  return w;
}

SigmaLattice::SigmaLattice(std::size_t n) : n_(n) {
  require(n >= 1 && n <= 6, ErrorCode::kSizeLimit, "sigma-algebra enumeration supports carriers of 1..6 points");
  // Restricted growth strings enumerate set partitions; each partition is the
  // atom set of exactly one sigma-algebra.
  std::vector<std::size_t> rgs(n, 0);
  while (true) {
    const std::size_t blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<Mask> atoms(blocks, 0);
    std::uint64_t same = 0;
    for (std::size_t p = 0; p < n; ++p) {
      atoms[rgs[p]] |= Mask{1} << p;
      for (std::size_t q = 0; q < n; ++q) {
        if (rgs[p] == rgs[q]) same |= std::uint64_t{1} << (p * n + q);
      }
    }
    algebras_.push_back(all_unions(atoms));
    same_block_.push_back(same);

    std::size_t i = n;
    while (i-- > 1) {
      const std::size_t prefix_max = *std::max_element(rgs.begin(), rgs.begin() + static_cast<long>(i));
      if (rgs[i] <= prefix_max) {
        ++rgs[i];
        std::fill(rgs.begin() + static_cast<long>(i) + 1, rgs.end(), 0);
        break;
      }
    }
    if (i == 0) break;
  }
  for (std::size_t k = 0; k < algebras_.size(); ++k) {
    if (algebras_[k].size() == (std::size_t{1} << n)) top_ = k;
    if (algebras_[k].size() == 2 || (n == 0 && algebras_[k].size() == 1)) bottom_ = k;
  }
}

bool SigmaLattice::le(std::size_t i, std::size_t j) const {
  // F_i is contained in F_j iff F_j's partition refines F_i's.
  return (same_block_[j] & ~same_block_[i]) == 0;
}

std::size_t SigmaLattice::index_of(const std::vector<Mask>& family) const {
  for (std::size_t k = 0; k < algebras_.size(); ++k) {
    if (algebras_[k] == family) return k;
  }
  return algebras_.size();
}

std::size_t SigmaLattice::meet(std::size_t i, std::size_t j) const {
  std::vector<Mask> common;
  std::set_intersection(algebras_[i].begin(), algebras_[i].end(), algebras_[j].begin(), algebras_[j].end(),
                        std::back_inserter(common));
  return index_of(common);
}

std::size_t SigmaLattice::join(std::size_t i, std::size_t j) const {
  std::vector<Mask> both(algebras_[i]);
  both.insert(both.end(), algebras_[j].begin(), algebras_[j].end());
  return index_of(sigma_generate(n_, both));
}

bool SigmaLattice::verify_complete(std::string* why) const {
  auto bad = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (algebras_[top_].size() != (std::size_t{1} << n_)) return bad("top is not the power set");
  if (algebras_[bottom_] != std::vector<Mask>{0, full_mask(n_)}) return bad("bottom is not indiscrete");
  const std::size_t count = algebras_.size();
  for (std::size_t k = 0; k < count; ++k) {
    if (!is_sigma_algebra(n_, algebras_[k])) return bad("element " + std::to_string(k) + " is not a sigma-algebra");
    if (!le(bottom_, k) || !le(k, top_)) return bad("element " + std::to_string(k) + " escapes [bottom, top]");
  }
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i; j < count; ++j) {
      const std::size_t m = meet(i, j);
      const std::size_t s = join(i, j);
      if (m == count) return bad("intersection of " + std::to_string(i) + "," + std::to_string(j) + " not in lattice");
      if (s == count) return bad("generated join of " + std::to_string(i) + "," + std::to_string(j) + " not in lattice");
      if (!le(m, i) || !le(m, j) || !le(i, s) || !le(j, s)) return bad("meet/join is not a bound");
      for (std::size_t k = 0; k < count; ++k) {
        if (le(k, i) && le(k, j) && !le(k, m)) return bad("meet is not greatest");
        if (le(i, k) && le(j, k) && !le(s, k)) return bad("join is not least");
      }
    }
  }
  return true;
}

std::string SigmaLattice::to_dot() const {
  auto label = [&](std::size_t k) {
    const auto space = FiniteMeasurableSpace::on_indices(n_, algebras_[k]);
    std::string s;
    for (Mask atom : space.atoms()) s += set_text(space, atom);
    return s;
  };
  std::ostringstream out;
  out << "digraph sigma_algebras_" << n_ << " {\n  rankdir=BT;\n";
  for (std::size_t k = 0; k < algebras_.size(); ++k) out << "  s" << k << " [label=\"" << label(k) << "\"];\n";
  for (std::size_t i = 0; i < algebras_.size(); ++i) {
    for (std::size_t j = 0; j < algebras_.size(); ++j) {
      if (i == j || !le(i, j)) continue;
      bool cover = true;
      for (std::size_t k = 0; k < algebras_.size() && cover; ++k) {
        if (k != i && k != j && le(i, k) && le(k, j)) cover = false;
      }
      if (cover) out << "  s" << i << " -> s" << j << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

SigmaLattice enumerate_sigma_algebras(std::size_t n) { return SigmaLattice(n); }

std::vector<FiniteMeasurableSpace> all_spaces(std::size_t max_points) {
  std::vector<FiniteMeasurableSpace> out;
  for (std::size_t n = 1; n <= max_points; ++n) {
    const SigmaLattice lattice(n);
    for (const auto& family : lattice.algebras()) out.push_back(FiniteMeasurableSpace::on_indices(n, family));
  }
  return out;
}

AdjunctionReport verify_adjunctions(std::size_t max_points) {
  AdjunctionReport r;
  auto note = [&](bool& flag, const std::string& msg) {
    if (flag && r.failure.empty()) r.failure = msg;
    flag = false;
  };
  const auto spaces = all_spaces(max_points);
  for (std::size_t m = 1; m <= max_points; ++m) {
    const auto set_a = index_labels(m);
    const auto la = discrete_functor(set_a);
    const auto ra = indiscrete_functor(set_a);
    if (underlying(la) != set_a) note(r.ul_identity, "U(L A) differs from A");
    if (underlying(ra) != set_a) note(r.ur_identity, "U(R A) differs from A");

    for (const auto& space : spaces) {
      ++r.pairs_checked;
      // Set(A, U M) -> Meas(L A, M) is the identity on tables; it must be total.
      for_each_function(m, space.size(), [&](const Table& t) {
        if (!is_measurable(la, space, t)) note(r.left_adjunction, "function A -> U M not measurable from L A");
      });
      for_each_function(space.size(), m, [&](const Table& t) {
        if (!is_measurable(space, ra, t)) note(r.right_adjunction, "function U M -> A not measurable into R A");
      });
    }
    for (std::size_t k = 1; k <= max_points; ++k) {
      const auto set_b = index_labels(k);
      const std::uint64_t expected = count_functions(m, k);
      if (count_measurable_maps(la, discrete_functor(set_b)) != expected) {
        note(r.discrete_full, "|Meas(L A, L B)| != |B|^|A|");
      }
      if (count_measurable_maps(ra, indiscrete_functor(set_b)) != expected) {
        note(r.indiscrete_full, "|Meas(R A, R B)| != |B|^|A|");
      }
    }
  }
  return r;
}

std::vector<UniversalWitness> verify_universal_exhaustive(std::size_t max_points) {
  require(max_points >= 1 && max_points <= 3, ErrorCode::kSizeLimit,
          "exhaustive universal-property check supports carriers of 1..3 points");
  const auto spaces = all_spaces(max_points);
  std::vector<UniversalWitness> out;
  auto merge = [](UniversalWitness& total, const UniversalWitness& w) {
    total.cones += w.cones;
    total.candidates_searched += w.candidates_searched;
    total.test_objects = w.test_objects;
    if (total.holds && !w.holds) total.failure = w.failure;
    total.holds = total.holds && w.holds;
  };
  for (auto kind : {UniversalKind::kProduct, UniversalKind::kCoproduct}) {
    UniversalWitness total{kind, 0};
    for (const auto& a : spaces) {
      for (const auto& b : spaces) {
        const FiniteMeasurableSpace pair[] = {a, b};
        merge(total, verify_universal_property(kind, pair, {}, spaces));
        ++total.diagrams;
      }
    }
    out.push_back(total);
  }
  for (auto kind : {UniversalKind::kEqualizer, UniversalKind::kCoequalizer}) {
    UniversalWitness total{kind, 0};
    for (const auto& a : spaces) {
      for (const auto& b : spaces) {
        const auto tables = measurable_maps(a, b);
        for (const auto& f : tables) {
          for (const auto& g : tables) {
            const MeasurableMap pair[] = {MeasurableMap(a, b, f), MeasurableMap(a, b, g)};
            merge(total, verify_universal_property(kind, {}, pair, spaces));
            ++total.diagrams;
          }
        }
      }
    }
    out.push_back(total);
  }
  for (auto kind : {UniversalKind::kFinal, UniversalKind::kInitial}) {
    UniversalWitness w = verify_universal_property(kind, {}, {}, spaces);
    out.push_back(w);
  }
  return out;
}

std::string describe(const FiniteMeasurableSpace& space) {
  std::string s = "{";
  for (std::size_t p = 0; p < space.size(); ++p) s += (p ? "," : "") + space.points()[p];
  s += "} with sigma {";
  for (std::size_t k = 0; k < space.sigma().size(); ++k) s += (k ? "," : "") + set_text(space, space.sigma()[k]);
  return s + "}";
}

}  // namespace itolab::meas
