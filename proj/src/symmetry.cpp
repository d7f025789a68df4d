#include "pmnc/symmetry.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

#include "pmnc/linalg_exact.hpp"

namespace pmnc {

namespace {

void check_perm(const std::vector<int>& p, const char* what) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v])
      throw ValidationError(std::string("symmetry: ") + what +
                            " is not a permutation");
    seen[v] = 1;
  }
}

void check_symmetry_shape(const ScenarioSymmetry& g) {
  check_perm(g.prep_perm, "preparation map");
  check_perm(g.setting_perm, "setting map");
  if (g.outcome_perm.size() != g.setting_perm.size())
    throw ValidationError("symmetry: outcome maps do not match settings");
  for (const auto& pi : g.outcome_perm) check_perm(pi, "outcome map");
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Set-valued lookup with exact comparison.
struct VertexSet {
  RMat rows;  // sorted
  explicit VertexSet(RMat r) : rows(std::move(r)) {
    std::sort(rows.begin(), rows.end(), [](const RVec& a, const RVec& b) {
      return compare_lex(a, b) < 0;
    });
  }
  bool contains(const RVec& v) const {
    return std::binary_search(
        rows.begin(), rows.end(), v,
        [](const RVec& a, const RVec& b) { return compare_lex(a, b) < 0; });
  }
};

// Cycle notation, fixed points suppressed; "id" for the identity.
std::string cycles(const std::vector<int>& p) {
  std::vector<char> seen(p.size(), 0);
  std::ostringstream os;
  bool any = false;
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (seen[start] || p[start] == static_cast<int>(start)) continue;
    os << '(';
    std::size_t cur = start;
    bool first = true;
    while (!seen[cur]) {
      seen[cur] = 1;
      if (!first) os << ' ';
      os << cur;
      first = false;
      cur = static_cast<std::size_t>(p[cur]);
    }
    os << ')';
    any = true;
  }
  return any ? os.str() : std::string("id");
}

}  // namespace

bool ScenarioSymmetry::operator<(const ScenarioSymmetry& o) const {
  if (prep_perm != o.prep_perm) return prep_perm < o.prep_perm;
  if (setting_perm != o.setting_perm) return setting_perm < o.setting_perm;
  return outcome_perm < o.outcome_perm;
}

ScenarioSymmetry identity_symmetry(const Scenario& s) {
  ScenarioSymmetry g;
  g.prep_perm.resize(s.n_x);
  std::iota(g.prep_perm.begin(), g.prep_perm.end(), 0);
  g.setting_perm.resize(s.n_y);
  std::iota(g.setting_perm.begin(), g.setting_perm.end(), 0);
  g.outcome_perm.assign(s.n_y, std::vector<int>(s.n_z));
  for (auto& pi : g.outcome_perm) std::iota(pi.begin(), pi.end(), 0);
  return g;
}

ScenarioSymmetry compose(const ScenarioSymmetry& a, const ScenarioSymmetry& b) {
  check_symmetry_shape(a);
  check_symmetry_shape(b);
  if (a.prep_perm.size() != b.prep_perm.size() ||
      a.setting_perm.size() != b.setting_perm.size())
    throw ValidationError("symmetry: composing maps of different shapes");
  ScenarioSymmetry c;
  c.prep_perm.resize(a.prep_perm.size());
  for (std::size_t x = 0; x < c.prep_perm.size(); ++x)
    c.prep_perm[x] = a.prep_perm[b.prep_perm[x]];
  const std::size_t ny = a.setting_perm.size();
  c.setting_perm.resize(ny);
  c.outcome_perm.resize(ny);
  for (std::size_t y = 0; y < ny; ++y) {
    c.setting_perm[y] = a.setting_perm[b.setting_perm[y]];
    const std::vector<int>& pa = a.outcome_perm[b.setting_perm[y]];
    const std::vector<int>& pb = b.outcome_perm[y];
    if (pa.size() != pb.size())
      throw ValidationError("symmetry: composing maps of different shapes");
    c.outcome_perm[y].resize(pb.size());
    for (std::size_t z = 0; z < pb.size(); ++z)
      c.outcome_perm[y][z] = pa[pb[z]];
  }
  return c;
}

ScenarioSymmetry inverse(const ScenarioSymmetry& g) {
  check_symmetry_shape(g);
  ScenarioSymmetry inv;
  inv.prep_perm.resize(g.prep_perm.size());
  for (std::size_t x = 0; x < g.prep_perm.size(); ++x)
    inv.prep_perm[g.prep_perm[x]] = static_cast<int>(x);
  inv.setting_perm.resize(g.setting_perm.size());
  inv.outcome_perm.resize(g.setting_perm.size());
  for (std::size_t y = 0; y < g.setting_perm.size(); ++y) {
    inv.setting_perm[g.setting_perm[y]] = static_cast<int>(y);
    std::vector<int>& pi = inv.outcome_perm[g.setting_perm[y]];
    pi.resize(g.outcome_perm[y].size());
    for (std::size_t z = 0; z < pi.size(); ++z)
      pi[g.outcome_perm[y][z]] = static_cast<int>(z);
  }
  return inv;
}

std::vector<ScenarioSymmetry> find_symmetries(const Scenario& s,
                                              const VPolytope& prod,
                                              long max_prep_perms) {
  VPolytope prep = prep_polytope(s);
  VPolytope meas = meas_polytope(s);
  // Products of distinct (q, xi) pairs are distinct because the rescaling
  // fixes the scale of each factor, so the product count must factor.
  if (prod.vertices.size() != prep.vertices.size() * meas.vertices.size())
    throw ValidationError(
        "find_symmetries: product polytope does not match the scenario");

  // Search space guard for the preparation side.
  long perms = 1;
  for (int k = 2; k <= s.n_x; ++k) {
    perms *= k;
    if (perms > max_prep_perms)
      throw SearchTooLarge(
          "find_symmetries: preparation permutation space exceeds the cap");
  }

  // Per-coordinate value multisets: x can only map to x' if the multiset of
  // vertex values at x equals the one at x'.
  std::vector<RVec> fingerprint(s.n_x);
  for (int x = 0; x < s.n_x; ++x) {
    RVec col;
    col.reserve(prep.vertices.size());
    for (const RVec& v : prep.vertices) col.push_back(v[x]);
    std::sort(col.begin(), col.end());
    fingerprint[x] = std::move(col);
  }
  std::vector<int> fclass(s.n_x, -1);
  {
    int next = 0;
    for (int x = 0; x < s.n_x; ++x) {
      if (fclass[x] >= 0) continue;
      fclass[x] = next;
      for (int x2 = x + 1; x2 < s.n_x; ++x2)
        if (fclass[x2] < 0 && fingerprint[x] == fingerprint[x2])
          fclass[x2] = next;
      ++next;
    }
  }

  VertexSet prep_set(prep.vertices);
  std::vector<std::vector<int>> prep_perms;
  {
    std::vector<int> p(s.n_x);
    std::iota(p.begin(), p.end(), 0);
    do {
      bool ok = true;
      for (int x = 0; x < s.n_x && ok; ++x)
        if (fclass[x] != fclass[p[x]]) ok = false;
      if (!ok) continue;
      for (const RVec& v : prep.vertices) {
        RVec img(s.n_x);
        for (int x = 0; x < s.n_x; ++x) img[p[x]] = v[x];
        if (!prep_set.contains(img)) {
          ok = false;
          break;
        }
      }
      if (ok) prep_perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }

  VertexSet meas_set(meas.vertices);
  struct MeasMap {
    std::vector<int> setting;
    std::vector<std::vector<int>> outcome;
  };
  std::vector<MeasMap> meas_maps;
  {
    std::vector<std::vector<int>> sigma = all_permutations(s.n_y);
    std::vector<std::vector<int>> pis = all_permutations(s.n_z);
    std::vector<std::size_t> odo(s.n_y, 0);
    for (const std::vector<int>& sg : sigma) {
      std::fill(odo.begin(), odo.end(), 0);
      for (;;) {
        bool ok = true;
        for (const RVec& v : meas.vertices) {
          RVec img(v.size());
          for (int y = 0; y < s.n_y; ++y)
            for (int z = 0; z < s.n_z; ++z)
              img[sg[y] * s.n_z + pis[odo[y]][z]] = v[y * s.n_z + z];
          if (!meas_set.contains(img)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          MeasMap m;
          m.setting = sg;
          m.outcome.reserve(s.n_y);
          for (int y = 0; y < s.n_y; ++y) m.outcome.push_back(pis[odo[y]]);
          meas_maps.push_back(std::move(m));
        }
        int y = 0;
        while (y < s.n_y && ++odo[y] == pis.size()) odo[y++] = 0;
        if (y == s.n_y) break;
      }
    }
  }

  std::vector<ScenarioSymmetry> group;
  group.reserve(prep_perms.size() * meas_maps.size());
  for (const std::vector<int>& p : prep_perms)
    for (const MeasMap& m : meas_maps) {
      ScenarioSymmetry g;
      g.prep_perm = p;
      g.setting_perm = m.setting;
      g.outcome_perm = m.outcome;
      group.push_back(std::move(g));
    }
  std::sort(group.begin(), group.end());
  return group;
}

Inequality apply_symmetry(const ScenarioSymmetry& g, const Inequality& reduced,
                          const ReducedBasis& basis) {
  check_symmetry_shape(g);
  if (static_cast<int>(g.prep_perm.size()) != basis.n_x ||
      static_cast<int>(g.setting_perm.size()) != basis.n_y)
    throw ValidationError("apply_symmetry: map does not fit the scenario");
  for (const auto& pi : g.outcome_perm)
    if (static_cast<int>(pi.size()) != basis.n_z)
      throw ValidationError("apply_symmetry: map does not fit the scenario");
  if (static_cast<int>(reduced.coeffs.size()) != basis.n_reduced())
    throw ValidationError("apply_symmetry: not in reduced coordinates");
  // Lift onto the independent coordinates, push labels forward, reduce.
  RVec full = zeros(basis.n_full());
  for (int j = 0; j < basis.n_reduced(); ++j) {
    const auto& c = basis.coords[j];
    full[basis.full_index(c[0], c[1], c[2])] = reduced.coeffs[j];
  }
  RVec pushed = zeros(basis.n_full());
  for (int y = 0; y < basis.n_y; ++y)
    for (int x = 0; x < basis.n_x; ++x)
      for (int z = 0; z < basis.n_z; ++z)
        pushed[basis.full_index(g.outcome_perm[y][z], g.prep_perm[x],
                                g.setting_perm[y])] =
            full[basis.full_index(z, x, y)];
  Inequality lifted;
  lifted.coeffs = std::move(pushed);
  lifted.bound = reduced.bound;
  return reduce(lifted, basis);
}

std::vector<InequalityClass> orbit_classify(
    const std::vector<Inequality>& ineqs,
    const std::vector<ScenarioSymmetry>& group, const ReducedBasis& basis) {
  if (group.empty())
    throw ValidationError("orbit_classify: the group must not be empty");
  using Less = bool (*)(const Inequality&, const Inequality&);
  // Distinct input forms with multiplicities.
  std::map<Inequality, long, Less> multiplicity(&inequality_less);
  for (const Inequality& q : ineqs) {
    if (static_cast<int>(q.coeffs.size()) != basis.n_reduced())
      throw ValidationError("orbit_classify: not in reduced coordinates");
    ++multiplicity[q];
  }
  std::set<Inequality, Less> visited(&inequality_less);
  std::vector<InequalityClass> classes;
  for (const auto& [seed, mult] : multiplicity) {
    (void)mult;
    if (visited.count(seed)) continue;
    // The group element list is closed, so one sweep yields the whole orbit.
    std::set<Inequality, Less> orbit(&inequality_less);
    orbit.insert(seed);
    for (const ScenarioSymmetry& g : group)
      orbit.insert(apply_symmetry(g, seed, basis));
    InequalityClass cls;
    cls.orbit_size = static_cast<long>(orbit.size());
    for (const Inequality& q : orbit) {
      visited.insert(q);
      auto it = multiplicity.find(q);
      if (it != multiplicity.end()) cls.weight += it->second;
      cls.members.push_back(q);
    }
    cls.representative = cls.members.front();  // set order = lex order
    classes.push_back(std::move(cls));
  }
  std::sort(classes.begin(), classes.end(),
            [](const InequalityClass& a, const InequalityClass& b) {
              if (a.orbit_size != b.orbit_size) return a.orbit_size < b.orbit_size;
              return inequality_less(a.representative, b.representative);
            });
  return classes;
}

std::string format_symmetry(const ScenarioSymmetry& g) {
  check_symmetry_shape(g);
  std::ostringstream os;
  os << "prep " << cycles(g.prep_perm) << " | settings "
     << cycles(g.setting_perm) << " | outcomes";
  bool any = false;
  for (std::size_t y = 0; y < g.outcome_perm.size(); ++y) {
    std::string c = cycles(g.outcome_perm[y]);
    if (c == "id") continue;
    os << ' ' << y << ':' << c;
    any = true;
  }
  if (!any) os << " id";
  return os.str();
}

std::vector<ScenarioSymmetry> close_group(
    const std::vector<ScenarioSymmetry>& generators, const Scenario& s,
    long max_size) {
  const std::size_t nx = static_cast<std::size_t>(s.n_x);
  const std::size_t ny = static_cast<std::size_t>(s.n_y);
  const std::size_t nz = static_cast<std::size_t>(s.n_z);
  for (const ScenarioSymmetry& g : generators) {
    check_symmetry_shape(g);
    if (g.prep_perm.size() != nx || g.setting_perm.size() != ny ||
        g.outcome_perm.size() != ny)
      throw ValidationError("generator shape does not match the scenario");
    for (const std::vector<int>& pi : g.outcome_perm)
      if (pi.size() != nz)
        throw ValidationError("generator shape does not match the scenario");
  }
  // Finite order makes the composition closure a group, so right-composing
  // generators onto known elements reaches every word.
  std::set<ScenarioSymmetry> seen;
  std::vector<ScenarioSymmetry> frontier;
  seen.insert(identity_symmetry(s));
  frontier.push_back(identity_symmetry(s));
  while (!frontier.empty()) {
    std::vector<ScenarioSymmetry> next;
    for (const ScenarioSymmetry& x : frontier)
      for (const ScenarioSymmetry& g : generators) {
        ScenarioSymmetry w = compose(x, g);
        if (seen.insert(w).second) {
          if (static_cast<long>(seen.size()) > max_size)
            throw SearchTooLarge("generator closure exceeds " +
                                 std::to_string(max_size) + " elements");
          next.push_back(std::move(w));
        }
      }
    frontier = std::move(next);
  }
  return std::vector<ScenarioSymmetry>(seen.begin(), seen.end());
}

namespace {

// Permutation of n points given as a product of transpositions.
std::vector<int> swaps(int n, std::initializer_list<std::pair<int, int>> ts) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  for (const auto& [a, b] : ts) std::swap(p[a], p[b]);
  return p;
}

ScenarioSymmetry prep_op(const Scenario& s, std::vector<int> pp) {
  ScenarioSymmetry g = identity_symmetry(s);
  g.prep_perm = std::move(pp);
  return g;
}

ScenarioSymmetry setting_op(const Scenario& s, std::vector<int> sp) {
  ScenarioSymmetry g = identity_symmetry(s);
  g.setting_perm = std::move(sp);
  return g;
}

// Apply the same outcome permutation at every setting.
ScenarioSymmetry outcome_op(const Scenario& s, const std::vector<int>& zp) {
  ScenarioSymmetry g = identity_symmetry(s);
  for (std::vector<int>& pi : g.outcome_perm) pi = zp;
  return g;
}

}  // namespace

std::vector<ScenarioSymmetry> listed_generators(const std::string& key) {
  Scenario s = builtin_scenario(key);
  std::vector<ScenarioSymmetry> gens;
  auto prep = [&](std::initializer_list<std::pair<int, int>> ts) {
    gens.push_back(prep_op(s, swaps(s.n_x, ts)));
  };
  auto settings = [&](std::initializer_list<std::pair<int, int>> ts) {
    gens.push_back(setting_op(s, swaps(s.n_y, ts)));
  };
  auto outcomes = [&](std::initializer_list<std::pair<int, int>> ts) {
    gens.push_back(outcome_op(s, swaps(s.n_z, ts)));
  };
  if (key == "s1") {
    prep({{0, 1}});
    prep({{2, 3}});
    outcomes({{0, 1}});
    settings({{0, 1}});
  } else if (key == "s2") {
    prep({{1, 2}});
    outcomes({{0, 1}});
    settings({{0, 1}});
    settings({{1, 2}});
    settings({{0, 2}});
  } else if (key == "s3" || key == "s4") {
    prep({{0, 1}});
    prep({{2, 3}});
    if (key == "s3") {
      prep({{2, 4}});
      prep({{3, 4}});
    }
    outcomes({{0, 1}});
    settings({{0, 1}});
    // Swap the settings while flipping outcomes on the second input only:
    // the four effects cycle (0,0) -> (1,0) -> (0,1) -> (1,1) -> (0,0).
    ScenarioSymmetry mixed = identity_symmetry(s);
    mixed.setting_perm = {1, 0};
    mixed.outcome_perm = {{0, 1}, {1, 0}};
    gens.push_back(mixed);
  } else if (key == "s5" || key == "s6" || key == "s7" || key == "s8") {
    if (key == "s5") {
      prep({{0, 1}});
      prep({{2, 3}});
      prep({{4, 5}});
    } else if (key == "s6") {
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) prep({{a, b}});
      for (int a = 4; a < 7; ++a)
        for (int b = a + 1; b < 7; ++b) prep({{a, b}});
    } else {
      // Rigid relabelings of a cube's vertex pairs.
      prep({{0, 1}, {6, 7}, {2, 3}, {4, 5}});
      prep({{0, 4}, {3, 7}, {2, 6}, {1, 5}});
      prep({{0, 7}, {3, 4}, {2, 6}, {1, 5}});
      prep({{0, 4}, {3, 7}, {2, 5}, {1, 6}});
      prep({{0, 7}, {3, 4}, {2, 5}, {1, 6}});
      prep({{0, 6}, {1, 7}});
    }
    outcomes({{0, 1}});
    settings({{0, 1}});
    settings({{1, 2}});
    settings({{0, 2}});
  } else if (key == "s9") {
    prep({{0, 1}});
    prep({{2, 3}});
    prep({{4, 5}});
    prep({{0, 2}, {1, 3}});
    prep({{0, 4}, {1, 5}});
    prep({{2, 4}, {3, 5}});
    prep({{0, 3}, {1, 2}});
    prep({{0, 5}, {1, 4}});
    prep({{2, 5}, {3, 4}});
    outcomes({{0, 1}});
    settings({{0, 1}});
  } else {
    throw ValidationError("no documented generator set for scenario '" + key +
                          "'");
  }
  return gens;
}

}  // namespace pmnc
