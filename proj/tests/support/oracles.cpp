#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <string>

namespace oracle {

Rel Rel::of(const polyframe::Poset& p) {
  Rel r;
  r.n = static_cast<int>(p.size());
  r.leq.assign(r.n, std::vector<bool>(r.n, false));
  for (int i = 0; i < r.n; ++i) r.leq[i][i] = true;
  for (auto [a, b] : p.covers()) r.leq[a][b] = true;
  for (int k = 0; k < r.n; ++k) {
    for (int i = 0; i < r.n; ++i) {
      for (int j = 0; j < r.n; ++j) {
        if (r.leq[i][k] && r.leq[k][j]) r.leq[i][j] = true;
      }
    }
  }
  return r;
}

bool Rel::is_upset(Mask m) const {
  for (int i = 0; i < n; ++i) {
    if (!(m >> i & 1)) continue;
    for (int j = 0; j < n; ++j) {
      if (leq[i][j] && !(m >> j & 1)) return false;
    }
  }
  return true;
}

Mask Rel::up(int x) const {
  Mask m = 0;
  for (int j = 0; j < n; ++j) {
    if (leq[x][j]) m |= Mask{1} << j;
  }
  return m;
}

std::vector<Mask> upsets(const Rel& r) {
  std::vector<Mask> out;
  for (Mask m = 0; m < (Mask{1} << r.n); ++m) {
    if (r.is_upset(m)) out.push_back(m);
  }
  return out;
}

int height(const Rel& r) {
  std::function<int(int)> longest = [&](int x) {
    int best = 0;
    for (int y = 0; y < r.n; ++y) {
      if (y != x && r.leq[x][y]) best = std::max(best, 1 + longest(y));
    }
    return best;
  };
  int h = 0;
  for (int x = 0; x < r.n; ++x) h = std::max(h, longest(x));
  return h;
}

bool is_p_morphism(const Rel& src, const Rel& dst, const std::vector<int>& f) {
  for (int x = 0; x < src.n; ++x) {
    if (f[x] < 0) continue;
    for (int y = 0; y < src.n; ++y) {
      if (f[y] < 0) continue;
      if (src.leq[x][y] && !dst.leq[f[x]][f[y]]) return false;
    }
    for (int v = 0; v < dst.n; ++v) {
      if (!dst.leq[f[x]][v]) continue;
      bool found = false;
      for (int y = 0; y < src.n && !found; ++y) found = f[y] == v && src.leq[x][y];
      if (!found) return false;
    }
  }
  return true;
}

std::optional<BruteReduction> up_reduction(const Rel& p, const Rel& q) {
  for (Mask d : upsets(p)) {
    std::vector<int> dom;
    for (int i = 0; i < p.n; ++i) {
      if (d >> i & 1) dom.push_back(i);
    }
    if (static_cast<int>(dom.size()) < q.n) continue;
    std::vector<int> f(p.n, -1);
    for (int i : dom) f[i] = 0;
    while (true) {
      std::vector<bool> hit(q.n, false);
      for (int i : dom) hit[f[i]] = true;
      if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }) && is_p_morphism(p, q, f)) {
        return BruteReduction{d, f};
      }
      std::size_t k = 0;
      while (k < dom.size() && f[dom[k]] == q.n - 1) f[dom[k++]] = 0;
      if (k == dom.size()) break;
      ++f[dom[k]];
    }
  }
  return std::nullopt;
}

bool forces(const Rel& r, const polyframe::Formula& f, const std::vector<std::pair<std::string, Mask>>& val,
            int x) {
  using K = polyframe::Formula::Kind;
  switch (f.kind()) {
    case K::Top:
      return true;
    case K::Bot:
      return false;
    case K::Atom:
      for (const auto& [name, m] : val) {
        if (name == f.name()) return m >> x & 1;
      }
      return false;
    case K::And:
      return forces(r, f.left(), val, x) && forces(r, f.right(), val, x);
    case K::Or:
      return forces(r, f.left(), val, x) || forces(r, f.right(), val, x);
    case K::Implies:
      for (int y = 0; y < r.n; ++y) {
        if (r.leq[x][y] && forces(r, f.left(), val, y) && !forces(r, f.right(), val, y)) return false;
      }
      return true;
  }
  return false;
}

bool valid(const Rel& r, const polyframe::Formula& f) {
  auto atoms = f.atoms();
  std::vector<std::string> names(atoms.begin(), atoms.end());
  auto ups = upsets(r);
  std::vector<std::size_t> pick(names.size(), 0);
  while (true) {
    std::vector<std::pair<std::string, Mask>> val;
    for (std::size_t i = 0; i < names.size(); ++i) val.emplace_back(names[i], ups[pick[i]]);
    for (int x = 0; x < r.n; ++x) {
      if (!forces(r, f, val, x)) return false;
    }
    std::size_t k = 0;
    while (k < pick.size() && pick[k] == ups.size() - 1) pick[k++] = 0;
    if (k == pick.size()) return true;
    ++pick[k];
  }
}

namespace {

using Matrix = std::vector<std::vector<bool>>;

// Smallest relabelled adjacency string over all permutations.
std::string canonical(const Matrix& m) {
  int n = static_cast<int>(m.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string s(static_cast<std::size_t>(n * n), '0');
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (m[perm[i]][perm[j]]) s[static_cast<std::size_t>(i * n + j)] = '1';
      }
    }
    if (best.empty() || s < best) best = s;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::string label(int i) { return "p" + std::to_string(i); }

polyframe::Poset from_matrix(const Matrix& m) {
  int n = static_cast<int>(m.size());
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(label(i));
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && m[i][j]) order.emplace_back(i, j);
    }
  }
  return polyframe::Poset::from_index_relations(std::move(names), order);
}

}  // namespace

std::vector<polyframe::Poset> posets_up_to_iso(int size) {
  // Every finite poset has a linear extension, so relations i < j with i < j
  // as integers cover all isomorphism classes.
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < size; ++i) {
    for (int j = i + 1; j < size; ++j) pairs.emplace_back(i, j);
  }
  std::set<std::string> seen;
  std::vector<polyframe::Poset> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs.size()); ++bits) {
    Matrix m(size, std::vector<bool>(size, false));
    for (int i = 0; i < size; ++i) m[i][i] = true;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (bits >> k & 1) m[pairs[k].first][pairs[k].second] = true;
    }
    bool transitive = true;
    for (int i = 0; i < size && transitive; ++i) {
      for (int j = 0; j < size && transitive; ++j) {
        for (int k = 0; k < size && transitive; ++k) {
          if (m[i][j] && m[j][k] && !m[i][k]) transitive = false;
        }
      }
    }
    if (!transitive) continue;
    if (seen.insert(canonical(m)).second) out.push_back(from_matrix(m));
  }
  return out;
}

std::vector<polyframe::Poset> rooted_posets_up_to_iso(int max_size) {
  std::vector<polyframe::Poset> out;
  for (int k = 0; k + 1 <= max_size; ++k) {
    for (const auto& p : (k == 0 ? std::vector<polyframe::Poset>{polyframe::Poset()} : posets_up_to_iso(k))) {
      std::vector<std::string> names = p.names();
      names.push_back("root");
      std::vector<std::pair<std::size_t, std::size_t>> order;
      for (auto [a, b] : p.covers()) order.emplace_back(a, b);
      for (std::size_t i = 0; i < p.size(); ++i) order.emplace_back(p.size(), i);
      out.push_back(polyframe::Poset::from_index_relations(std::move(names), order));
    }
  }
  return out;
}

polyframe::Poset random_poset(int size, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  std::vector<std::string> names;
  for (int i = 0; i < size; ++i) names.push_back("q" + std::to_string(i));
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (int i = 0; i < size; ++i) {
    for (int j = i + 1; j < size; ++j) {
      if (coin(rng)) order.emplace_back(i, j);
    }
  }
  return polyframe::Poset::from_index_relations(std::move(names), order);
}

}  // namespace oracle
