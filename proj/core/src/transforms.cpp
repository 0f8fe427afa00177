#include "itolab/transforms.hpp"

#include <algorithm>
#include <functional>

namespace itolab {

namespace {

void require_members(const StoppingIndex& a, const StoppingIndex& b, const char* op) {
  require(a.index.size() == b.index.size(), ErrorCode::kInvalidArgument,
          std::string(op) + ": stopping indices have different member counts");
}

std::string index_text(const StoppingIndex& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.index.size(); ++i) s += (i ? "," : "") + std::to_string(t.index[i]);
  return s + ")";
}

/// All subsets of {1..pool} of size k, ascending.
void for_each_subset(std::size_t pool, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i + 1;
  while (true) {
    visit(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == pool - (k - i)) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

StoppingIndex stopping_meet(const StoppingIndex& a, const StoppingIndex& b) {
  require_members(a, b, "stopping_meet");
  StoppingIndex out{a.index};
  for (std::size_t i = 0; i < out.index.size(); ++i) out.index[i] = std::min(a.index[i], b.index[i]);
  return out;
}

StoppingIndex stopping_join(const StoppingIndex& a, const StoppingIndex& b) {
  require_members(a, b, "stopping_join");
  StoppingIndex out{a.index};
  for (std::size_t i = 0; i < out.index.size(); ++i) out.index[i] = std::max(a.index[i], b.index[i]);
  return out;
}

bool stopping_le(const StoppingIndex& a, const StoppingIndex& b) {
  require_members(a, b, "stopping_le");
  for (std::size_t i = 0; i < a.index.size(); ++i) {
    if (a.index[i] > b.index[i]) return false;
  }
  return true;
}

LatticeCheck verify_stopping_lattice(std::size_t n, std::size_t members) {
  require(n <= 6 && members >= 1 && members <= 3, ErrorCode::kSizeLimit,
          "stopping lattice check supports n <= 6 and 1..3 members");
  std::vector<StoppingIndex> all;
  StoppingIndex cur{std::vector<std::size_t>(members, 0)};
  while (true) {
    all.push_back(cur);
    std::size_t i = 0;
    while (i < members && ++cur.index[i] == n + 1) cur.index[i++] = 0;
    if (i == members) break;
  }
  LatticeCheck r;
  r.elements = all.size();
  auto bad = [&](const std::string& msg) {
    if (r.holds) r.failure = msg;
    r.holds = false;
  };
  for (const auto& a : all) {
    if (stopping_meet(a, a) != a || stopping_join(a, a) != a) bad("idempotence fails at " + index_text(a));
    for (const auto& b : all) {
      const auto m = stopping_meet(a, b);
      const auto j = stopping_join(a, b);
      if (m != stopping_meet(b, a) || j != stopping_join(b, a)) bad("commutativity fails");
      if (stopping_meet(a, j) != a || stopping_join(a, m) != a) bad("absorption fails at " + index_text(a));
      if ((m == a) != stopping_le(a, b)) bad("meet disagrees with the order at " + index_text(a) + index_text(b));
      for (const auto& c : all) {
        ++r.tuples_checked;
        if (stopping_meet(m, c) != stopping_meet(a, stopping_meet(b, c))) bad("meet is not associative");
        if (stopping_join(j, c) != stopping_join(a, stopping_join(b, c))) bad("join is not associative");
      }
    }
  }
  return r;
}

GroupoidCheck verify_time_change_groupoid(std::size_t max_n) {
  require(max_n >= 1 && max_n <= 6, ErrorCode::kSizeLimit, "groupoid check supports 1 <= n <= 6");
  using Map = TimeChangeMap<Rational>;
  GroupoidCheck r;
  auto bad = [&](bool& flag, const std::string& msg) {
    if (r.all()) r.failure = msg;
    flag = false;
  };
  for (std::size_t n = 1; n <= max_n; ++n) {
    const long denom = static_cast<long>(n) + 2;
    std::vector<GridPtr<Rational>> grids;
    for_each_subset(static_cast<std::size_t>(denom) - 1, n - 1, [&](const std::vector<std::size_t>& pick) {
      std::vector<Rational> times{Rational(0)};
      for (std::size_t k : pick) times.push_back(ratio<Rational>(static_cast<long>(k), denom));
      times.push_back(Rational(1));
      grids.push_back(make_grid(std::move(times)));
    });
    r.grids += grids.size();
    std::vector<std::vector<Map>> arrows(grids.size());
    for (std::size_t a = 0; a < grids.size(); ++a) {
      for (std::size_t b = 0; b < grids.size(); ++b) arrows[a].push_back(Map::between(grids[a], grids[b]));
    }
    r.arrows += grids.size() * grids.size();

    for (std::size_t a = 0; a < grids.size(); ++a) {
      const Map id_a = Map::identity(grids[a]);
      for (std::size_t b = 0; b < grids.size(); ++b) {
        const Map& phi = arrows[a][b];
        const Map id_b = Map::identity(grids[b]);
        if (!(compose_time_changes(phi, id_a) == phi) || !(compose_time_changes(id_b, phi) == phi)) {
          bad(r.identity, "identity law fails for n=" + std::to_string(n));
        }
        const Map inv = invert_time_change(phi);
        if (!(compose_time_changes(inv, phi) == id_a) || !(compose_time_changes(phi, inv) == id_b)) {
          bad(r.inverse, "inverse law fails for n=" + std::to_string(n));
        }
        for (std::size_t c = 0; c < grids.size(); ++c) {
          const Map& psi = arrows[b][c];
          const Map psi_phi = compose_time_changes(psi, phi);
          if (!(psi_phi == arrows[a][c]) || !psi_phi.is_bijective()) bad(r.closure, "composition leaves the arrow set");
          for (std::size_t d = 0; d < grids.size(); ++d) {
            ++r.compositions_checked;
            const Map& chi = arrows[c][d];
            if (!(compose_time_changes(compose_time_changes(chi, psi), phi) == compose_time_changes(chi, psi_phi))) {
              bad(r.associativity, "associativity fails for n=" + std::to_string(n));
            }
          }
        }
      }
    }
  }
  return r;
}

}  // namespace itolab
