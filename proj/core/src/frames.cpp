#include "polyframe/frames.hpp"

#include "polyframe/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>

namespace polyframe {

UpsetAlgebra::UpsetAlgebra(Poset frame, std::size_t cap) : frame_(std::move(frame)) {
  const auto& order = frame_.linear_extension();
  const std::size_t n = frame_.size();
  ElementSet current(n);
  // Decide membership from the top of the linear extension down; x may join
  // only when its whole strict upset is already in.
  auto walk = [&](auto&& self, std::size_t k) -> void {
    if (k == 0) {
      if (carrier_.size() >= cap) {
        throw CapExceeded(fmt::format("upset algebra exceeds the carrier cap of {} members", cap));
      }
      carrier_.push_back(current);
      return;
    }
    ElementId x = order[k - 1];
    self(self, k - 1);
    if (frame_.strict_up(x).is_subset_of(current)) {
      current.set(x);
      self(self, k - 1);
      current.reset(x);
    }
  };
  walk(walk, n);
  std::sort(carrier_.begin(), carrier_.end(), [](const ElementSet& a, const ElementSet& b) {
    auto ca = a.count();
    auto cb = b.count();
    return ca != cb ? ca < cb : a < b;
  });
  index_.reserve(carrier_.size());
  for (std::size_t i = 0; i < carrier_.size(); ++i) index_.emplace(carrier_[i], i);
}

std::optional<std::size_t> UpsetAlgebra::index_of(const ElementSet& u) const {
  auto it = index_.find(u);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ElementSet UpsetAlgebra::implies(const ElementSet& u, const ElementSet& v) const {
  // x is in u -> v exactly when no point above x lies in u \ v.
  return ~frame_.downset(u - v);
}

UpsetAlgebra up_algebra(const Poset& frame, std::size_t cap) { return UpsetAlgebra(frame, cap); }

ValidityResult frame_validates(const Poset& frame, const Formula& f, std::size_t cap) {
  UpsetAlgebra algebra(frame, cap);
  const auto atom_set = f.atoms();
  std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
  const auto& carrier = algebra.carrier();
  std::vector<std::size_t> choice(atoms.size(), 0);
  Valuation<ElementSet> valuation;
  while (true) {
    for (std::size_t i = 0; i < atoms.size(); ++i) valuation[atoms[i]] = carrier[choice[i]];
    ElementSet value = eval(f, algebra, valuation);
    if (!value.all()) {
      ElementSet missing = ~value;
      return {Refutation{valuation, missing.find_first()}};
    }
    std::size_t i = atoms.size();
    while (i > 0 && ++choice[i - 1] == carrier.size()) {
      choice[i - 1] = 0;
      --i;
    }
    if (i == 0) return {};
  }
}

namespace {

std::string set_string(const Poset& p, const ElementSet& s) {
  std::string out = "{";
  bool first = true;
  for (auto x : members(s)) {
    out += (first ? "" : ",") + p.name(x);
    first = false;
  }
  return out + "}";
}

}  // namespace

std::string describe(const Poset& frame, const Refutation& r) {
  std::string out = "refuted at " + frame.name(r.failing_element) + " under";
  for (const auto& [atom, value] : r.valuation) out += " " + atom + "=" + set_string(frame, value);
  return out;
}

ElementSet PosetMap::image_of(const ElementSet& s) const {
  ElementSet out(target.size());
  for (auto x : members(s)) out.set(image.at(x));
  return out;
}

PMorphismCheck is_p_morphism(const PosetMap& f) {
  PMorphismCheck check;
  if (f.image.size() != f.source.size()) {
    check.failure = PMorphismCheck::Failure::NotTotal;
    check.witness = {std::min(f.image.size(), f.source.size()), 0};
    return check;
  }
  for (ElementId x = 0; x < f.source.size(); ++x) {
    if (f.image[x] >= f.target.size()) {
      check.failure = PMorphismCheck::Failure::NotTotal;
      check.witness = {x, 0};
      return check;
    }
  }
  for (ElementId x = 0; x < f.source.size(); ++x) {
    for (auto y : members(f.source.up(x))) {
      if (!f.target.leq(f.image[x], f.image[y])) {
        check.failure = PMorphismCheck::Failure::Monotonicity;
        check.witness = {x, y};
        return check;
      }
    }
  }
  for (ElementId x = 0; x < f.source.size(); ++x) {
    ElementSet reached = f.image_of(f.source.up(x));
    ElementSet missing = f.target.up(f.image[x]) - reached;
    if (missing.any()) {
      check.failure = PMorphismCheck::Failure::Back;
      check.witness = {x, missing.find_first()};
      return check;
    }
  }
  return check;
}

bool is_surjective(const PosetMap& f) {
  ElementSet hit(f.target.size());
  for (auto y : f.image) {
    if (y < hit.size()) hit.set(y);
  }
  return hit.all();
}

std::string describe(const PosetMap& f, const PMorphismCheck& check) {
  auto [a, b] = check.witness;
  switch (check.failure) {
    case PMorphismCheck::Failure::None:
      return "p-morphism";
    case PMorphismCheck::Failure::NotTotal:
      return fmt::format("map is not total at source element {}", a);
    case PMorphismCheck::Failure::Monotonicity:
      return fmt::format("not monotone: {} <= {} but {} !<= {}", f.source.name(a), f.source.name(b),
                         f.target.name(f.image[a]), f.target.name(f.image[b]));
    case PMorphismCheck::Failure::Back:
      return fmt::format("back condition fails: {} >= f({}) has no preimage above {}", f.target.name(b),
                         f.source.name(a), f.source.name(a));
  }
  return "unknown";
}

PosetMap identity_map(const Poset& p) {
  PosetMap f{p, p, std::vector<ElementId>(p.size())};
  for (ElementId x = 0; x < p.size(); ++x) f.image[x] = x;
  return f;
}

PosetMap compose(const PosetMap& f, const PosetMap& g) {
  if (!(f.target == g.source)) throw PreconditionError("compose: target of f differs from source of g");
  PosetMap h{f.source, g.target, std::vector<ElementId>(f.source.size())};
  for (ElementId x = 0; x < f.source.size(); ++x) h.image[x] = g.image.at(f.image.at(x));
  return h;
}

namespace {

// Searches for a p-morphism from `u` onto `target` sending the least element
// `bottom` of u to the root. Elements are assigned tops first, so when y is
// reached f(⇑y) is known and f(y) must satisfy ↑f(y) = {f(y)} ∪ f(⇑y).
std::optional<std::vector<ElementId>> reduce_principal(const Poset& u, ElementId bottom, const Poset& target,
                                                       ElementId root) {
  std::vector<ElementId> order(u.size());
  for (ElementId i = 0; i < u.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](ElementId a, ElementId b) { return u.depth_of(a) < u.depth_of(b); });
  std::vector<ElementId> image(u.size(), target.size());
  auto assign = [&](auto&& self, std::size_t k) -> bool {
    if (k == order.size()) return true;
    ElementId y = order[k];
    ElementSet above(target.size());
    for (auto z : members(u.strict_up(y))) above.set(image[z]);
    auto try_candidate = [&](ElementId q) {
      ElementSet required = above;
      required.set(q);
      if (target.up(q) != required) return false;
      image[y] = q;
      if (self(self, k + 1)) return true;
      image[y] = target.size();
      return false;
    };
    if (y == bottom) return try_candidate(root);
    for (ElementId q = 0; q < target.size(); ++q) {
      if (try_candidate(q)) return true;
    }
    return false;
  };
  if (!assign(assign, 0)) return std::nullopt;
  return image;
}

}  // namespace

std::optional<UpReduction> find_up_reduction(const Poset& frame, const Poset& target) {
  auto root = target.root();
  if (!root) throw PreconditionError("up-reduction target must be rooted");
  for (ElementId x = 0; x < frame.size(); ++x) {
    if (frame.up(x).count() < target.size()) continue;
    std::vector<ElementId> ids;
    Poset u = frame.restrict(frame.up(x), &ids);
    ElementId bottom = static_cast<ElementId>(std::find(ids.begin(), ids.end(), x) - ids.begin());
    if (auto image = reduce_principal(u, bottom, target, *root)) {
      return UpReduction{frame.up(x), std::move(ids), PosetMap{std::move(u), target, std::move(*image)}};
    }
  }
  return std::nullopt;
}

bool validates_jankov_fine(const Poset& frame, const Poset& target) {
  return !find_up_reduction(frame, target).has_value();
}

bool satisfies_bd(const Poset& frame, int n) { return frame.empty() || frame.height() <= n; }

PlResult satisfies_pl(const Poset& frame, std::optional<int> n) {
  PlResult r;
  if (n) {
    for (ElementId x = 0; x < frame.size(); ++x) {
      if (frame.height_of(x) > *n) {
        r.clause = PlResult::Clause::Height;
        r.witness = x;
        return r;
      }
    }
  }
  for (ElementId x = 0; x < frame.size(); ++x) {
    int d = frame.depth_of(x);
    if (d == 1 && frame.strict_up(x).count() > 2) {
      r.clause = PlResult::Clause::DepthOne;
      r.witness = x;
      return r;
    }
    if (d > 1 && frame.components(frame.strict_up(x)).size() != 1) {
      r.clause = PlResult::Clause::Connected;
      r.witness = x;
      return r;
    }
  }
  return r;
}

const char* clause_name(PlResult::Clause c) {
  switch (c) {
    case PlResult::Clause::None:
      return "none";
    case PlResult::Clause::Height:
      return "i";
    case PlResult::Clause::DepthOne:
      return "ii";
    case PlResult::Clause::Connected:
      return "iii";
  }
  return "unknown";
}

std::string describe(const Poset& frame, const PlResult& r) {
  switch (r.clause) {
    case PlResult::Clause::None:
      return "pass";
    case PlResult::Clause::Height:
      return fmt::format("fail (i, height): {} has height {}", frame.name(r.witness), frame.height_of(r.witness));
    case PlResult::Clause::DepthOne:
      return fmt::format("fail (ii, depth one): {} has depth 1 and {} strict successors", frame.name(r.witness),
                         frame.strict_up(r.witness).count());
    case PlResult::Clause::Connected:
      return fmt::format("fail (iii, connected): strict upset of {} has {} components", frame.name(r.witness),
                         frame.components(frame.strict_up(r.witness)).size());
  }
  return "unknown";
}

namespace {

std::optional<int> prefix_count(std::string_view name, std::string_view suffix) {
  if (name.size() <= suffix.size() || name.substr(name.size() - suffix.size()) != suffix) return std::nullopt;
  auto digits = name.substr(0, name.size() - suffix.size());
  int k = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || k < 1) return std::nullopt;
  return k;
}

Poset fork(int k) {
  std::vector<std::string> names{"r"};
  std::vector<std::pair<std::string, std::string>> order;
  for (int i = 1; i <= k; ++i) {
    names.push_back("t" + std::to_string(i));
    order.emplace_back("r", names.back());
  }
  return Poset::from_relations(names, order);
}

Poset chain(int k) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> order;
  for (int i = 0; i < k; ++i) {
    names.push_back("c" + std::to_string(i));
    if (i > 0) order.emplace_back(names[i - 1], names[i]);
  }
  return Poset::from_relations(names, order);
}

}  // namespace

Poset builtin_frame(std::string_view name) {
  if (name.starts_with("builtin:")) name.remove_prefix(8);
  if (name == "point") return Poset::from_relations({"r"}, {});
  if (name == "three_fork") return fork(3);
  if (name == "two_fork") return fork(2);
  if (name == "scott") {
    return Poset::from_relations({"bot", "u1", "u2", "v1"}, {{"bot", "u1"}, {"u1", "u2"}, {"bot", "v1"}});
  }
  if (auto k = prefix_count(name, "-fork")) return fork(*k);
  if (auto k = prefix_count(name, "-chain")) return chain(*k);
  throw PreconditionError("unknown builtin frame '" + std::string(name) + "'");
}

std::vector<std::string> builtin_frame_names() {
  return {"point", "<k>-fork", "<k>-chain", "three_fork", "two_fork", "scott"};
}

Spectrum prime_filter_spectrum(const UpsetAlgebra& algebra) {
  const auto& carrier = algebra.carrier();
  // Filters of a finite lattice are principal; the filter generated by a is
  // prime iff a is join-prime.
  std::vector<std::size_t> primes;
  for (std::size_t a = 0; a < carrier.size(); ++a) {
    if (carrier[a].none()) continue;
    bool prime = true;
    for (std::size_t b = 0; b < carrier.size() && prime; ++b) {
      for (std::size_t c = b; c < carrier.size() && prime; ++c) {
        if (carrier[a].is_subset_of(carrier[b] | carrier[c]) && !carrier[a].is_subset_of(carrier[b]) &&
            !carrier[a].is_subset_of(carrier[c])) {
          prime = false;
        }
      }
    }
    if (prime) primes.push_back(a);
  }
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (auto a : primes) names.push_back("F" + std::to_string(a));
  for (std::size_t i = 0; i < primes.size(); ++i) {
    for (std::size_t j = 0; j < primes.size(); ++j) {
      // ↑a ⊆ ↑b iff b ≤ a
      if (i != j && carrier[primes[j]].is_subset_of(carrier[primes[i]])) order.emplace_back(i, j);
    }
  }
  Spectrum s;
  s.poset = Poset::from_index_relations(names, order);
  s.generators.resize(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) s.generators[s.poset.at(names[i])] = primes[i];
  return s;
}

std::optional<std::vector<ElementId>> canonical_spectrum_map(const UpsetAlgebra& algebra, const Spectrum& spectrum) {
  const Poset& frame = algebra.frame();
  const auto& carrier = algebra.carrier();
  std::vector<ElementId> map(frame.size());
  for (ElementId x = 0; x < frame.size(); ++x) {
    auto gen = algebra.index_of(frame.up(x));
    if (!gen) return std::nullopt;
    auto it = std::find(spectrum.generators.begin(), spectrum.generators.end(), *gen);
    if (it == spectrum.generators.end()) return std::nullopt;
    // {U : x ∈ U} must coincide with the principal filter of the generator.
    for (const auto& u : carrier) {
      if (u.test(x) != carrier[*gen].is_subset_of(u)) return std::nullopt;
    }
    map[x] = static_cast<ElementId>(it - spectrum.generators.begin());
  }
  return map;
}

bool esakia_round_trip(const Poset& frame, std::size_t cap) {
  UpsetAlgebra algebra(frame, cap);
  Spectrum spectrum = prime_filter_spectrum(algebra);
  if (spectrum.poset.size() != frame.size()) return false;
  auto map = canonical_spectrum_map(algebra, spectrum);
  if (!map) return false;
  std::vector<bool> hit(frame.size(), false);
  for (auto y : *map) hit[y] = true;
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) return false;
  for (ElementId x = 0; x < frame.size(); ++x) {
    for (ElementId y = 0; y < frame.size(); ++y) {
      if (frame.leq(x, y) != spectrum.poset.leq((*map)[x], (*map)[y])) return false;
    }
  }
  return true;
}

}  // namespace polyframe
