#include "pmnc/scenario.hpp"

#include <sstream>

namespace pmnc {
namespace {

// Stacked within-group consecutive difference vectors (they span the same
// space as all pairwise differences).
RMat difference_rows(const std::vector<RMat>& groups) {
  RMat rows;
  for (const RMat& g : groups)
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      RVec d(g[i].size());
      for (std::size_t j = 0; j < d.size(); ++j) d[j] = g[i][j] - g[i + 1][j];
      rows.push_back(std::move(d));
    }
  return rows;
}

void validate_group(const RMat& g, std::size_t want_len, const std::string& what) {
  if (g.size() < 2)
    throw ValidationError(what + " group needs at least two vectors");
  for (const RVec& v : g) {
    if (v.size() != want_len)
      throw ValidationError(what + " vector of wrong length");
    Rational sum(0);
    for (const Rational& c : v) {
      if (sgn(c) < 0) throw ValidationError(what + " coefficient negative");
      sum += c;
    }
    if (sum != 1) throw ValidationError(what + " coefficients do not sum to 1");
  }
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (g[i] == g[j])
        throw ValidationError(what + " group repeats a vector");
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

RMat parse_group(const std::string& body) {
  RMat group;
  std::vector<std::string> parts;
  {
    std::string acc;
    for (char c : body) {
      if (c == '|') {
        parts.push_back(acc);
        acc.clear();
      } else {
        acc += c;
      }
    }
    parts.push_back(acc);
  }
  for (const std::string& p : parts) {
    RVec v;
    for (const std::string& tok : split_ws(p)) v.push_back(parse_rational(tok));
    if (v.empty()) throw ParseError("empty vector in equivalence group");
    group.push_back(std::move(v));
  }
  if (group.size() < 2)
    throw ParseError("equivalence group needs at least two vectors");
  return group;
}

int parse_count(const std::string& tok, const std::string& what) {
  Rational r = parse_rational(tok);
  if (!is_integer(r) || sgn(r) <= 0)
    throw ParseError(what + " must be a positive integer");
  if (r > 1000) throw ParseError(what + " implausibly large");
  return static_cast<int>(r.get_num().get_si());
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Scenario s;
  bool have_name = false, have_nx = false, have_ny = false, have_nz = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string directive;
    if (!(ls >> directive)) continue;  // blank line
    std::string rest;
    std::getline(ls, rest);
    auto one_token = [&](const std::string& what) {
      std::vector<std::string> toks = split_ws(rest);
      if (toks.size() != 1)
        throw ParseError(what + " expects one value (line " +
                         std::to_string(lineno) + ")");
      return toks[0];
    };
    if (directive == "name") {
      if (have_name) throw ParseError("duplicate name line");
      s.name = one_token("name");
      have_name = true;
    } else if (directive == "nx") {
      if (have_nx) throw ParseError("duplicate nx line");
      s.n_x = parse_count(one_token("nx"), "nx");
      have_nx = true;
    } else if (directive == "ny") {
      if (have_ny) throw ParseError("duplicate ny line");
      s.n_y = parse_count(one_token("ny"), "ny");
      have_ny = true;
    } else if (directive == "nz") {
      if (have_nz) throw ParseError("duplicate nz line");
      s.n_z = parse_count(one_token("nz"), "nz");
      have_nz = true;
    } else if (directive == "prep_equiv") {
      s.prep_equivs.push_back(parse_group(rest));
    } else if (directive == "meas_equiv") {
      s.meas_equivs.push_back(parse_group(rest));
    } else {
      throw ParseError("unknown directive '" + directive + "' (line " +
                       std::to_string(lineno) + ")");
    }
  }
  if (!have_name) throw ParseError("missing name line");
  if (!have_nx || !have_ny || !have_nz)
    throw ParseError("missing nx/ny/nz line");
  validate_scenario(s);
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "name " << s.name << "\n";
  out << "nx " << s.n_x << "\n";
  out << "ny " << s.n_y << "\n";
  out << "nz " << s.n_z << "\n";
  auto emit = [&out](const char* directive, const std::vector<RMat>& groups) {
    for (const RMat& g : groups) {
      out << directive;
      for (std::size_t i = 0; i < g.size(); ++i) {
        out << (i ? " |" : "");
        for (const Rational& c : g[i]) out << " " << format_rational(c);
      }
      out << "\n";
    }
  };
  emit("prep_equiv", s.prep_equivs);
  emit("meas_equiv", s.meas_equivs);
  return out.str();
}

void validate_scenario(const Scenario& s) {
  if (s.name.empty()) throw ValidationError("scenario has no name");
  if (s.n_x <= 0 || s.n_y <= 0 || s.n_z <= 0)
    throw ValidationError("scenario counts must be positive");
  if (s.prep_equivs.empty())
    throw ValidationError(
        "scenario requires at least one preparation equivalence group");
  for (const RMat& g : s.prep_equivs)
    validate_group(g, static_cast<std::size_t>(s.n_x), "preparation");
  for (const RMat& g : s.meas_equivs)
    validate_group(g, static_cast<std::size_t>(s.n_y) * s.n_z, "measurement");
  int ns = prep_constraint_rank(s);
  if (ns >= s.n_x)
    throw ValidationError(
        "preparation constraints leave no free preparation (n_s >= n_x)");
}

int prep_constraint_rank(const Scenario& s) {
  return rank(difference_rows(s.prep_equivs));
}

int meas_constraint_rank(const Scenario& s) {
  return rank(difference_rows(s.meas_equivs));
}

namespace {

RVec rv(std::initializer_list<Rational> xs) { return RVec(xs); }

Scenario make_builtin(const std::string& key) {
  const Rational H(1, 2), T(1, 3), Q(1, 4), O(0), I(1);
  Scenario s;
  s.name = key;
  if (key == "s1") {
    s.n_x = 4;
    s.n_y = 2;
    s.n_z = 2;
    s.prep_equivs = {{rv({H, H, O, O}), rv({O, O, H, H})}};
  } else if (key == "s2") {
    s.n_x = 4;
    s.n_y = 3;
    s.n_z = 2;
    s.prep_equivs = {{rv({T, T, T, O}), rv({H, O, O, H})}};
  } else if (key == "s3") {
    s.n_x = 5;
    s.n_y = 2;
    s.n_z = 2;
    s.prep_equivs = {{rv({H, H, O, O, O}), rv({O, O, T, T, T})}};
  } else if (key == "s4") {
    s.n_x = 5;
    s.n_y = 2;
    s.n_z = 2;
    s.prep_equivs = {{rv({Q, Q, Q, Q, O}), rv({T, T, O, O, T})}};
  } else if (key == "s5") {
    s.n_x = 6;
    s.n_y = 3;
    s.n_z = 2;
    s.prep_equivs = {{rv({H, H, O, O, O, O}), rv({O, O, H, H, O, O}),
                      rv({O, O, O, O, H, H})}};
  } else if (key == "s6") {
    s.n_x = 7;
    s.n_y = 3;
    s.n_z = 2;
    s.prep_equivs = {{rv({Q, Q, Q, Q, O, O, O}), rv({O, O, O, O, T, T, T})}};
  } else if (key == "s7" || key == "s8") {
    s.n_x = 8;
    s.n_y = 3;
    s.n_z = 2;
    // the eight four-element mixtures of cube-vertex preparations that are
    // pairwise indistinguishable (opposite faces and the two tetrahedra)
    const int groups[8][4] = {{0, 1, 6, 7}, {2, 3, 4, 5}, {0, 2, 5, 7},
                              {1, 3, 4, 6}, {0, 3, 4, 7}, {1, 2, 5, 6},
                              {0, 3, 5, 6}, {1, 2, 4, 7}};
    RMat one_group;
    for (const auto& g : groups) {
      RVec v(8, O);
      for (int x : g) v[x] = Q;
      one_group.push_back(std::move(v));
    }
    s.prep_equivs = {one_group};
    if (key == "s8")
      s.meas_equivs = {{rv({T, O, T, O, T, O}), rv({O, T, O, T, O, T})}};
  } else if (key == "s9") {
    s.n_x = 6;
    s.n_y = 2;
    s.n_z = 3;
    s.prep_equivs = {{rv({H, H, O, O, O, O}), rv({O, O, H, H, O, O}),
                      rv({O, O, O, O, H, H})}};
    s.meas_equivs = {{rv({H, O, O, H, O, O}), rv({O, H, O, O, H, O})}};
  } else {
    throw ValidationError("unknown builtin scenario key: " + key);
  }
  validate_scenario(s);
  return s;
}

}  // namespace

const std::map<std::string, Scenario>& builtin_scenarios() {
  static const std::map<std::string, Scenario> all = [] {
    std::map<std::string, Scenario> m;
    for (int i = 1; i <= 9; ++i) {
      std::string key = "s" + std::to_string(i);
      m.emplace(key, make_builtin(key));
    }
    return m;
  }();
  return all;
}

Scenario builtin_scenario(const std::string& key) {
  const auto& all = builtin_scenarios();
  auto it = all.find(key);
  if (it == all.end())
    throw ValidationError("unknown builtin scenario key: " + key);
  return it->second;
}

ReducedBasis reduced_basis(const Scenario& s) {
  validate_scenario(s);
  const int nx = s.n_x, ny = s.n_y, nz = s.n_z;

  // Preparation elimination: reduced row echelon form of the difference
  // vectors with columns scanned from the highest preparation index down;
  // each pivot row expresses its pivot preparation through lower ones.
  RMat prep_red = difference_rows(s.prep_equivs);
  std::vector<int> prep_cols(nx);
  for (int j = 0; j < nx; ++j) prep_cols[j] = nx - 1 - j;
  std::vector<int> prep_piv = rref_in_place(prep_red, &prep_cols);
  std::vector<int> dep_row_of_x(nx, -1);
  for (std::size_t i = 0; i < prep_piv.size(); ++i)
    dep_row_of_x[prep_piv[i]] = static_cast<int>(i);

  // Measurement elimination over base coordinates b = (z, y) with z < nz-1
  // (outcome nz-1 substituted via normalization first, which introduces the
  // constant column). Columns scanned highest y first, then highest z.
  const int nb = ny * (nz - 1);
  auto bidx = [nz](int z, int y) { return y * (nz - 1) + z; };
  RMat meas_red;
  for (const RVec& d : difference_rows(s.meas_equivs)) {
    RVec row = zeros(nb + 1);  // base coefficients plus trailing constant
    for (int y = 0; y < ny; ++y)
      for (int z = 0; z < nz; ++z) {
        const Rational& c = d[y * nz + z];
        if (sgn(c) == 0) continue;
        if (z < nz - 1) {
          row[bidx(z, y)] += c;
        } else {
          row[nb] += c;
          for (int zz = 0; zz < nz - 1; ++zz) row[bidx(zz, y)] -= c;
        }
      }
    meas_red.push_back(std::move(row));
  }
  std::vector<int> meas_cols;
  for (int y = ny - 1; y >= 0; --y)
    for (int z = nz - 2; z >= 0; --z) meas_cols.push_back(bidx(z, y));
  std::vector<int> meas_piv = rref_in_place(meas_red, &meas_cols);
  // a row that is zero on all base coordinates but nonzero on the constant
  // means the equivalence system is contradictory
  for (const RVec& row : meas_red) {
    bool base_zero = true;
    for (int j = 0; j < nb; ++j)
      if (sgn(row[j]) != 0) {
        base_zero = false;
        break;
      }
    if (base_zero && sgn(row[nb]) != 0)
      throw ValidationError("contradictory measurement equivalences");
  }
  std::vector<int> elim_row_of_b(nb, -1);
  for (std::size_t i = 0; i < meas_piv.size(); ++i)
    elim_row_of_b[meas_piv[i]] = static_cast<int>(i);

  // Independent coordinates, in full-index order.
  ReducedBasis basis;
  basis.n_x = nx;
  basis.n_y = ny;
  basis.n_z = nz;
  basis.red_of_full.assign(nx * ny * nz, -1);
  for (int y = 0; y < ny; ++y)
    for (int x = 0; x < nx; ++x)
      for (int z = 0; z < nz; ++z) {
        if (z == nz - 1) continue;
        if (dep_row_of_x[x] >= 0) continue;
        if (elim_row_of_b[bidx(z, y)] >= 0) continue;
        basis.red_of_full[basis.full_index(z, x, y)] =
            static_cast<int>(basis.coords.size());
        basis.coords.push_back({z, x, y});
      }
  const int nred = basis.n_reduced();

  // Affine expression of every full coordinate over the independent ones.
  // Composition order: normalization, then preparation substitution, then
  // measurement substitution; each stage only produces coordinates the
  // later stages know how to handle.
  auto add_base = [&](const Rational& c, int z, int x, int y, RVec& acc) {
    const int b = bidx(z, y);
    if (elim_row_of_b[b] < 0) {
      acc[basis.red_of_full[basis.full_index(z, x, y)]] += c;
      return;
    }
    const RVec& row = meas_red[elim_row_of_b[b]];
    // row: p(b) + sum_j row[j] p(j) + row[nb] = 0 over base coords of x
    acc[nred] -= c * row[nb];
    for (int y2 = 0; y2 < ny; ++y2)
      for (int z2 = 0; z2 < nz - 1; ++z2) {
        const int b2 = bidx(z2, y2);
        if (b2 == b || sgn(row[b2]) == 0) continue;
        acc[basis.red_of_full[basis.full_index(z2, x, y2)]] -= c * row[b2];
      }
  };
  auto add_coord = [&](const Rational& c, int z, int x, int y, RVec& acc) {
    if (dep_row_of_x[x] < 0) {
      add_base(c, z, x, y, acc);
      return;
    }
    const RVec& row = prep_red[dep_row_of_x[x]];
    // row: p(x) + sum_{x2 != x} row[x2] p(x2) = 0 (per z, y)
    for (int x2 = 0; x2 < nx; ++x2) {
      if (x2 == x || sgn(row[x2]) == 0) continue;
      add_base(-c * row[x2], z, x2, y, acc);
    }
  };
  basis.subst.assign(nx * ny * nz, zeros(nred + 1));
  for (int y = 0; y < ny; ++y)
    for (int x = 0; x < nx; ++x)
      for (int z = 0; z < nz; ++z) {
        RVec& acc = basis.subst[basis.full_index(z, x, y)];
        if (z < nz - 1) {
          add_coord(Rational(1), z, x, y, acc);
        } else {
          acc[nred] += 1;
          for (int z2 = 0; z2 < nz - 1; ++z2)
            add_coord(Rational(-1), z2, x, y, acc);
        }
      }
  return basis;
}

DimsReport dims_report(const Scenario& s, int r) {
  DimsReport rep;
  rep.n_s = prep_constraint_rank(s);
  rep.n_t = meas_constraint_rank(s);
  rep.prep_our_dim = s.n_x - rep.n_s;
  rep.prep_aux_dim = rep.prep_our_dim * r - s.n_x;
  rep.meas_aux_dim = r * (s.n_y * s.n_z - s.n_y - rep.n_t);
  rep.product_dim = rep.prep_our_dim + s.n_y * s.n_z - s.n_y - rep.n_t;
  return rep;
}

}  // namespace pmnc
