#pragma once

// Finite fragment of the category of measurable spaces. On a finite carrier a
// sigma-algebra is a Boolean subalgebra of the power set, so every universal
// property below is decidable by exhaustive search over set functions.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace itolab::meas {

/// Subset of a carrier {0, .., n-1} as a bitmask.
using Mask = std::uint32_t;
inline constexpr std::size_t kMaxPoints = 16;
/// Upper bound on the number of candidate mediating maps per test object.
inline constexpr std::uint64_t kSearchLimit = 1'000'000;

inline Mask full_mask(std::size_t n) { return n == 0 ? 0u : static_cast<Mask>((std::uint64_t{1} << n) - 1); }

/// Smallest family containing the generators, the empty set and the carrier,
/// closed under complement and union. Returned sorted.
std::vector<Mask> sigma_generate(std::size_t n, std::span<const Mask> generators);

bool is_sigma_algebra(std::size_t n, std::span<const Mask> family);

class FiniteMeasurableSpace {
 public:
  FiniteMeasurableSpace() = default;
  /// Throws invalid-argument unless `sigma` is a sigma-algebra on the points.
  FiniteMeasurableSpace(std::vector<std::string> points, std::vector<Mask> sigma);

  static FiniteMeasurableSpace generated(std::vector<std::string> points, std::span<const Mask> generators);
  /// Points labelled "0", "1", ...
  static FiniteMeasurableSpace on_indices(std::size_t n, std::vector<Mask> sigma);

  std::size_t size() const { return points_.size(); }
  Mask full() const { return full_mask(points_.size()); }
  const std::vector<std::string>& points() const { return points_; }
  const std::vector<Mask>& sigma() const { return sigma_; }
  bool contains(Mask set) const;
  /// Minimal nonempty measurable sets; they partition the carrier.
  const std::vector<Mask>& atoms() const { return atoms_; }

  friend bool operator==(const FiniteMeasurableSpace&, const FiniteMeasurableSpace&) = default;

 private:
  std::vector<std::string> points_;
  std::vector<Mask> sigma_{0};
  std::vector<Mask> atoms_;
};

/// Underlying-set functor U; carriers are compared through their labels.
inline const std::vector<std::string>& underlying(const FiniteMeasurableSpace& space) { return space.points(); }

/// Left adjoint L of U: the power-set sigma-algebra.
FiniteMeasurableSpace discrete_functor(std::vector<std::string> points);
/// Right adjoint R of U: the indiscrete sigma-algebra {empty, carrier}.
FiniteMeasurableSpace indiscrete_functor(std::vector<std::string> points);

using Table = std::vector<std::size_t>;

Mask preimage(const Table& table, Mask set, std::size_t codomain_size);
bool is_measurable(const FiniteMeasurableSpace& domain, const FiniteMeasurableSpace& codomain, const Table& table);

class MeasurableMap {
 public:
  /// Throws invalid-argument if the table is out of range or not measurable.
  MeasurableMap(FiniteMeasurableSpace domain, FiniteMeasurableSpace codomain, Table table);

  const FiniteMeasurableSpace& domain() const { return domain_; }
  const FiniteMeasurableSpace& codomain() const { return codomain_; }
  const Table& table() const { return table_; }
  std::size_t operator()(std::size_t point) const { return table_[point]; }

 private:
  FiniteMeasurableSpace domain_;
  FiniteMeasurableSpace codomain_;
  Table table_;
};

/// g o f
MeasurableMap compose(const MeasurableMap& g, const MeasurableMap& f);

/// Calls visit(table) for every set function {0..m-1} -> {0..n-1}.
template <class Visit>
void for_each_function(std::size_t m, std::size_t n, Visit&& visit) {
  Table table(m, 0);
  if (m > 0 && n == 0) return;
  while (true) {
    visit(static_cast<const Table&>(table));
    std::size_t i = 0;
    while (i < m && ++table[i] == n) table[i++] = 0;
    if (i == m) return;
  }
}

std::uint64_t count_functions(std::size_t m, std::size_t n);
std::uint64_t count_measurable_maps(const FiniteMeasurableSpace& domain, const FiniteMeasurableSpace& codomain);

struct Cone {
  FiniteMeasurableSpace apex;
  std::vector<MeasurableMap> legs;
};

/// A x B with the sigma-algebra generated by rectangles; legs are the projections.
Cone product_space(const FiniteMeasurableSpace& a, const FiniteMeasurableSpace& b);
/// A + B with the disjoint-union sigma-algebra; legs are the injections.
Cone coproduct_space(const FiniteMeasurableSpace& a, const FiniteMeasurableSpace& b);
/// {x | f(x) = g(x)} with the trace sigma-algebra; leg is the inclusion.
Cone equalizer(const MeasurableMap& f, const MeasurableMap& g);
/// B / ~ for the equivalence generated by f(x) ~ g(x), with the quotient
/// sigma-algebra; leg is the quotient map.
Cone coequalizer(const MeasurableMap& f, const MeasurableMap& g);
/// One-point space with its only sigma-algebra.
FiniteMeasurableSpace final_object();
/// Empty space.
FiniteMeasurableSpace initial_object();

/// Limit of a finite chain A_0 <- A_1 <- ... <- A_k given by maps[i]: A_{i+1} -> A_i:
/// compatible threads in the product with the initial sigma-algebra of the projections.
Cone chain_limit(const std::vector<MeasurableMap>& maps);
/// Colimit of a finite chain A_0 -> A_1 -> ... -> A_k given by maps[i]: A_i -> A_{i+1}:
/// quotient of the coproduct with the final sigma-algebra of the injections.
Cone chain_colimit(const std::vector<MeasurableMap>& maps);

enum class UniversalKind { kProduct, kCoproduct, kEqualizer, kCoequalizer, kFinal, kInitial };

std::string to_string(UniversalKind kind);
UniversalKind parse_universal_kind(const std::string& text);

/// Outcome of an exhaustive universal-property search.
struct UniversalWitness {
  UniversalKind kind{};
  std::size_t diagrams = 1;
  std::size_t test_objects = 0;
  std::uint64_t cones = 0;               // measurable (co)cones examined
  std::uint64_t candidates_searched = 0; // set functions enumerated as mediators
  bool holds = true;                     // every cone has exactly one measurable mediator
  std::string failure;                   // first counterexample, if any
};

/// Checks the universal property of the (co)limit built from `spaces`/`maps`
/// against every test object in `test_objects`:
///   product, coproduct: spaces = {A, B}
///   equalizer, coequalizer: maps = {f, g} (parallel)
///   final, initial: no inputs
/// Throws size-limit when a mediator search would exceed kSearchLimit.
UniversalWitness verify_universal_property(UniversalKind kind, std::span<const FiniteMeasurableSpace> spaces,
                                           std::span<const MeasurableMap> maps,
                                           std::span<const FiniteMeasurableSpace> test_objects);

/// One aggregated witness per kind: every diagram whose spaces have at most
/// max_points points (all pairs of spaces; all parallel pairs of measurable
/// maps), each tested against every such space.
std::vector<UniversalWitness> verify_universal_exhaustive(std::size_t max_points);

/// All sigma-algebras on {0..n-1} ordered by inclusion.
class SigmaLattice {
 public:
  explicit SigmaLattice(std::size_t n);

  std::size_t carrier_size() const { return n_; }
  std::size_t size() const { return algebras_.size(); }
  const std::vector<std::vector<Mask>>& algebras() const { return algebras_; }
  bool le(std::size_t i, std::size_t j) const;
  std::size_t meet(std::size_t i, std::size_t j) const;
  std::size_t join(std::size_t i, std::size_t j) const;
  std::size_t top() const { return top_; }
  std::size_t bottom() const { return bottom_; }

  /// Verifies that pairwise meets (intersections) and joins (generated
  /// sigma-algebras) are greatest lower / least upper bounds among all
  /// elements, and that top is the power set and bottom the indiscrete
  /// algebra. A finite lattice with these is complete.
  bool verify_complete(std::string* why = nullptr) const;

  /// Hasse diagram as Graphviz DOT text.
  std::string to_dot() const;

 private:
  std::size_t index_of(const std::vector<Mask>& family) const;

  std::size_t n_;
  std::vector<std::vector<Mask>> algebras_;
  std::vector<std::uint64_t> same_block_;  // pairs (p, q) in a common atom
  std::size_t top_ = 0;
  std::size_t bottom_ = 0;
};

/// enumerate_sigma_algebras(n) for n <= 6 (size-limit otherwise).
SigmaLattice enumerate_sigma_algebras(std::size_t n);

/// Every labelled space with carrier size in [1, max_points].
std::vector<FiniteMeasurableSpace> all_spaces(std::size_t max_points);

struct AdjunctionReport {
  bool ul_identity = true;          // U(L A) = A
  bool ur_identity = true;          // U(R A) = A
  bool left_adjunction = true;      // Set(A, U M) = Meas(L A, M)
  bool right_adjunction = true;     // Set(U M, A) = Meas(M, R A)
  bool discrete_full = true;        // |Meas(L A, L B)| = |B|^|A|
  bool indiscrete_full = true;      // |Meas(R A, R B)| = |B|^|A|
  std::size_t pairs_checked = 0;
  std::string failure;

  bool all() const {
    return ul_identity && ur_identity && left_adjunction && right_adjunction && discrete_full && indiscrete_full;
  }
};

/// Exhaustive check of L -| U -| R on carriers of size <= max_points.
AdjunctionReport verify_adjunctions(std::size_t max_points);

std::string describe(const FiniteMeasurableSpace& space);

}  // namespace itolab::meas
