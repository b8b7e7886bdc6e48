#include "flatchain/lp.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <optional>
#include <queue>

#include "flatchain/errors.hpp"

namespace flatchain {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : t_(rows, RationalVector(cols + 1)), basis_(rows), obj_(cols + 1) {}

  std::vector<RationalVector>& rows() { return t_; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::size_t cols() const { return obj_.size() - 1; }
  std::size_t pivots() const { return pivots_; }

  void set_cost(const RationalVector& cost) {
    cost_ = cost;
    for (std::size_t j = 0; j <= cols(); ++j) obj_[j] = j < cols() ? cost[j] : Rational(0);
    for (std::size_t i = 0; i < t_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols(); ++j) {
        if (t_[i][j] != 0) obj_[j] -= cb * t_[i][j];
      }
    }
  }

  // Current objective value.
  Rational value() const { return -obj_[cols()]; }

  void pivot(std::size_t r, std::size_t c) {
    ++pivots_;
    const Rational p = t_[r][c];
    for (auto& v : t_[r]) {
      if (v != 0) v /= p;
    }
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols(); ++j) {
      if (t_[r][j] != 0) nz.push_back(j);
    }
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == r || t_[i][c] == 0) continue;
      const Rational f = t_[i][c];
      for (std::size_t j : nz) t_[i][j] -= f * t_[r][j];
    }
    if (obj_[c] != 0) {
      const Rational f = obj_[c];
      for (std::size_t j : nz) obj_[j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  // Bland's rule; returns false when unbounded.
  bool optimize(const std::vector<bool>& banned) {
    while (true) {
      std::size_t enter = cols();
      for (std::size_t j = 0; j < cols(); ++j) {
        if (!banned[j] && obj_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols()) return true;
      std::size_t leave = t_.size();
      Rational best;
      for (std::size_t i = 0; i < t_.size(); ++i) {
        if (t_[i][enter] <= 0) continue;
        const Rational ratio = t_[i][cols()] / t_[i][enter];
        if (leave == t_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == t_.size()) return false;
      pivot(leave, enter);
    }
  }

  void erase_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

 private:
  std::vector<RationalVector> t_;
  std::vector<std::size_t> basis_;
  RationalVector obj_;
  RationalVector cost_;
  std::size_t pivots_ = 0;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t m = lp.rows.size();
  const std::size_t n = lp.num_vars;
  std::size_t slacks = 0;
  for (const auto& row : lp.rows) {
    if (row.sense != Sense::eq) ++slacks;
  }
  // Column occupancy of original variables, to reuse unit columns as initial basis.
  std::vector<int> col_count(n, 0);
  std::vector<std::size_t> col_row(n, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& [j, a] : lp.rows[i].coeffs) {
      if (a == 0) continue;
      ++col_count[j];
      col_row[j] = i;
    }
  }
  std::vector<RationalVector> dense(m, RationalVector(n + slacks));
  RationalVector rhs(m);
  std::vector<std::optional<std::size_t>> start(m);
  std::size_t slack = n;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = lp.rows[i];
    for (const auto& [j, a] : row.coeffs) dense[i][j] += a;
    rhs[i] = row.rhs;
    if (row.sense == Sense::le) dense[i][slack] = 1;
    if (row.sense == Sense::ge) dense[i][slack] = -1;
    const bool flip = rhs[i] < 0;
    if (flip) {
      rhs[i] = -rhs[i];
      for (auto& v : dense[i]) v = -v;
    }
    if (row.sense != Sense::eq) {
      if (dense[i][slack] > 0) start[i] = slack;
      ++slack;
    }
  }
  std::vector<bool> used(n + slacks, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (start[i]) continue;
    for (const auto& [j, a] : lp.rows[i].coeffs) {
      if (col_count[j] == 1 && col_row[j] == i && dense[i][j] > 0 && !used[j]) {
        start[i] = j;
        used[j] = true;
        break;
      }
    }
  }
  std::size_t arts = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!start[i]) ++arts;
  }
  const std::size_t total = n + slacks + arts;
  Tableau tab(m, total);
  std::size_t art = n + slacks;
  for (std::size_t i = 0; i < m; ++i) {
    auto& row = tab.rows()[i];
    for (std::size_t j = 0; j < n + slacks; ++j) row[j] = dense[i][j];
    row[total] = rhs[i];
    if (start[i]) {
      const Rational p = row[*start[i]];
      if (p != 1) {
        for (auto& v : row) v /= p;
      }
      tab.basis()[i] = *start[i];
    } else {
      row[art] = 1;
      tab.basis()[i] = art++;
    }
  }
  LpResult result;
  std::vector<bool> banned(total, false);
  if (arts > 0) {
    RationalVector phase1(total);
    for (std::size_t j = n + slacks; j < total; ++j) phase1[j] = 1;
    tab.set_cost(phase1);
    tab.optimize(banned);
    if (tab.value() > 0) {
      result.status = LpStatus::infeasible;
      result.pivots = tab.pivots();
      return result;
    }
    for (std::size_t i = 0; i < tab.rows().size();) {
      if (tab.basis()[i] < n + slacks) {
        ++i;
        continue;
      }
      std::size_t c = n + slacks;
      for (std::size_t j = 0; j < n + slacks; ++j) {
        if (tab.rows()[i][j] != 0) {
          c = j;
          break;
        }
      }
      if (c == n + slacks) {
        tab.erase_row(i);
      } else {
        tab.pivot(i, c);
        ++i;
      }
    }
    for (std::size_t j = n + slacks; j < total; ++j) banned[j] = true;
  }
  RationalVector cost(total);
  for (std::size_t j = 0; j < n && j < lp.objective.size(); ++j) cost[j] = lp.objective[j];
  tab.set_cost(cost);
  const bool bounded = tab.optimize(banned);
  result.pivots = tab.pivots();
  if (!bounded) {
    result.status = LpStatus::unbounded;
    return result;
  }
  result.status = LpStatus::optimal;
  result.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < tab.rows().size(); ++i) {
    if (tab.basis()[i] < n) result.x[tab.basis()[i]] = tab.rows()[i][total];
  }
  result.value = 0;
  for (std::size_t j = 0; j < n && j < lp.objective.size(); ++j) result.value += lp.objective[j] * result.x[j];
  return result;
}

Rational l1_objective(const L1Problem& p, const RationalVector& s) {
  RationalVector r = p.rhs;
  Rational value(0);
  for (std::size_t j = 0; j < p.num_cols(); ++j) {
    if (s[j] == 0) continue;
    value += p.col_weight[j] * abs(s[j]);
    for (const auto& [row, b] : p.columns[j]) r[static_cast<std::size_t>(row)] -= b * s[j];
  }
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    if (r[i] == 0) continue;
    if (p.modulus == 0) {
      value += p.row_weight[i] * abs(r[i]);
    } else {
      if (r[i].get_den() != 1) throw DomainError("residue problem with fractional residual");
      Integer x;
      mpz_fdiv_r_ui(x.get_mpz_t(), r[i].get_num_mpz_t(), static_cast<unsigned long>(p.modulus));
      const long v = x.get_si();
      value += p.row_weight[i] * Rational(std::min<long>(v, p.modulus - v));
    }
  }
  return value;
}

namespace {

bool is_integral(const RationalVector& s) {
  return std::all_of(s.begin(), s.end(), [](const Rational& q) { return q.get_den() == 1; });
}

// Common denominator of a family of rationals.
Integer common_den(std::initializer_list<const RationalVector*> families) {
  Integer d(1);
  for (const auto* fam : families) {
    for (const auto& q : *fam) d = lcm(d, q.get_den());
  }
  return d;
}

i64 checked_i64(const Rational& q) {
  if (q.get_den() != 1 || !q.get_num().fits_slong_p()) throw CapabilityError("value exceeds 64-bit network range");
  const i64 v = q.get_num().get_si();
  if (v > (i64{1} << 52) || v < -(i64{1} << 52)) throw CapabilityError("value exceeds 64-bit network range");
  return v;
}

// Successive shortest paths with Dijkstra and node potentials.
class MinCostFlow {
 public:
  struct Arc {
    int to;
    int rev;
    i64 cap;
    i64 cost;
    i64 initial;
  };

  explicit MinCostFlow(int n) : g_(static_cast<std::size_t>(n)), excess_(static_cast<std::size_t>(n), 0), pot_(static_cast<std::size_t>(n), 0) {}

  std::pair<int, int> add_arc(int u, int v, i64 cap, i64 cost) {
    auto& gu = g_[static_cast<std::size_t>(u)];
    auto& gv = g_[static_cast<std::size_t>(v)];
    gu.push_back({v, static_cast<int>(gv.size()), cap, cost, cap});
    gv.push_back({u, static_cast<int>(gu.size()) - 1, 0, -cost, 0});
    return {u, static_cast<int>(gu.size()) - 1};
  }

  void add_supply(int v, i64 s) { excess_[static_cast<std::size_t>(v)] += s; }

  i64 flow(std::pair<int, int> h) const {
    const Arc& a = g_[static_cast<std::size_t>(h.first)][static_cast<std::size_t>(h.second)];
    return a.initial - a.cap;
  }

  const std::vector<i64>& potentials() const { return pot_; }

  // Returns the total cost of the optimal flow; throws if infeasible.
  i128 solve() {
    const std::size_t n = g_.size();
    for (std::size_t u = 0; u < n; ++u) {
      for (auto& a : g_[u]) {
        if (a.cost < 0 && a.cap > 0) push(static_cast<int>(u), a, a.cap);
      }
    }
    constexpr i64 inf = std::numeric_limits<i64>::max() / 4;
    std::vector<i64> dist(n, inf);
    std::vector<std::pair<int, int>> parent(n, {-1, -1});
    std::vector<int> touched;
    std::vector<char> done(n, 0);
    while (true) {
      touched.clear();
      using Item = std::pair<i64, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
      for (std::size_t v = 0; v < n; ++v) {
        if (excess_[v] > 0) {
          dist[v] = 0;
          parent[v] = {-1, -1};
          touched.push_back(static_cast<int>(v));
          heap.push({0, static_cast<int>(v)});
        }
      }
      if (touched.empty()) break;
      int target = -1;
      i64 reach = 0;
      while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        const auto uu = static_cast<std::size_t>(u);
        if (done[uu] || d != dist[uu]) continue;
        done[uu] = 1;
        if (excess_[uu] < 0) {
          target = u;
          reach = d;
          break;
        }
        for (int idx = 0; idx < static_cast<int>(g_[uu].size()); ++idx) {
          const Arc& a = g_[uu][static_cast<std::size_t>(idx)];
          if (a.cap <= 0) continue;
          const auto vv = static_cast<std::size_t>(a.to);
          const i64 nd = d + a.cost + pot_[uu] - pot_[vv];
          if (nd < dist[vv]) {
            if (dist[vv] == inf) touched.push_back(a.to);
            dist[vv] = nd;
            parent[vv] = {u, idx};
            heap.push({nd, a.to});
          }
        }
      }
      if (target < 0) throw Error("network problem is infeasible");
      for (std::size_t v = 0; v < n; ++v) pot_[v] += std::min(dist[v], reach);
      for (int t : touched) {
        dist[static_cast<std::size_t>(t)] = inf;
        done[static_cast<std::size_t>(t)] = 0;
      }
      blocking_flow();
    }
    i128 total = 0;
    for (const auto& arcs : g_) {
      for (const auto& a : arcs) {
        if (a.initial > 0) total += static_cast<i128>(a.initial - a.cap) * a.cost;
      }
    }
    return total;
  }

 private:
  bool admissible(std::size_t u, const Arc& a) const {
    return a.cap > 0 && a.cost + pot_[u] - pot_[static_cast<std::size_t>(a.to)] == 0;
  }

  // Saturates zero reduced-cost paths from excess to deficit nodes, level by level.
  void blocking_flow() {
    const std::size_t n = g_.size();
    std::vector<int> level(n);
    std::vector<std::size_t> it(n);
    std::vector<std::pair<int, int>> path;
    while (true) {
      std::fill(level.begin(), level.end(), -1);
      std::queue<int> q;
      for (std::size_t v = 0; v < n; ++v) {
        if (excess_[v] > 0) {
          level[v] = 0;
          q.push(static_cast<int>(v));
        }
      }
      bool reached = false;
      while (!q.empty()) {
        const auto u = static_cast<std::size_t>(q.front());
        q.pop();
        if (excess_[u] < 0) reached = true;
        for (const auto& a : g_[u]) {
          const auto v = static_cast<std::size_t>(a.to);
          if (level[v] < 0 && admissible(u, a)) {
            level[v] = level[u] + 1;
            q.push(a.to);
          }
        }
      }
      if (!reached) return;
      std::fill(it.begin(), it.end(), 0);
      for (std::size_t s = 0; s < n; ++s) {
        while (excess_[s] > 0 && level[s] == 0) {
          path.clear();
          auto u = s;
          bool found = false;
          while (true) {
            if (u != s && excess_[u] < 0) {
              found = true;
              break;
            }
            auto& i = it[u];
            while (i < g_[u].size()) {
              const Arc& a = g_[u][i];
              if (admissible(u, a) && level[static_cast<std::size_t>(a.to)] == level[u] + 1) break;
              ++i;
            }
            if (i == g_[u].size()) {
              level[u] = -1;
              if (path.empty()) break;
              u = static_cast<std::size_t>(path.back().first);
              path.pop_back();
              ++it[u];
              continue;
            }
            path.emplace_back(static_cast<int>(u), static_cast<int>(i));
            u = static_cast<std::size_t>(g_[u][i].to);
          }
          if (!found) break;
          i64 amount = std::min(excess_[s], -excess_[u]);
          for (const auto& [pu, pi] : path) {
            amount = std::min(amount, g_[static_cast<std::size_t>(pu)][static_cast<std::size_t>(pi)].cap);
          }
          for (const auto& [pu, pi] : path) push(pu, g_[static_cast<std::size_t>(pu)][static_cast<std::size_t>(pi)], amount);
        }
      }
    }
  }

  void push(int u, Arc& a, i64 f) {
    a.cap -= f;
    g_[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.rev)].cap += f;
    excess_[static_cast<std::size_t>(u)] -= f;
    excess_[static_cast<std::size_t>(a.to)] += f;
  }

  std::vector<std::vector<Arc>> g_;
  std::vector<i64> excess_;
  std::vector<i64> pot_;
};

// Assigns flips so that every pair (a, b, same_sign) ends with opposite signs.
std::optional<std::vector<int>> two_color(std::size_t count, const std::vector<std::tuple<int, int, bool>>& pairs) {
  std::vector<std::vector<std::pair<int, bool>>> adj(count);
  for (const auto& [a, b, same] : pairs) {
    adj[static_cast<std::size_t>(a)].push_back({b, same});
    adj[static_cast<std::size_t>(b)].push_back({a, same});
  }
  std::vector<int> flip(count, 0);
  std::vector<char> seen(count, 0);
  for (std::size_t s = 0; s < count; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    std::vector<int> stack{static_cast<int>(s)};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const auto& [v, same] : adj[static_cast<std::size_t>(u)]) {
        const int want = flip[static_cast<std::size_t>(u)] ^ (same ? 1 : 0);
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          flip[static_cast<std::size_t>(v)] = want;
          stack.push_back(v);
        } else if (flip[static_cast<std::size_t>(v)] != want) {
          return std::nullopt;
        }
      }
    }
  }
  return flip;
}

std::optional<std::vector<int>> flow_flips(const L1Problem& p) {
  std::vector<std::tuple<int, int, bool>> pairs;
  for (const auto& col : p.columns) {
    if (col.size() > 2) return std::nullopt;
    for (const auto& [r, b] : col) {
      if (b != 1 && b != -1) return std::nullopt;
    }
    if (col.size() == 2) {
      if (col[0].first == col[1].first) return std::nullopt;
      pairs.emplace_back(col[0].first, col[1].first, col[0].second == col[1].second);
    }
  }
  return two_color(p.num_rows(), pairs);
}

std::vector<std::vector<std::pair<int, int>>> row_view(const L1Problem& p) {
  std::vector<std::vector<std::pair<int, int>>> rows(p.num_rows());
  for (std::size_t j = 0; j < p.num_cols(); ++j) {
    for (const auto& [r, b] : p.columns[j]) rows[static_cast<std::size_t>(r)].push_back({static_cast<int>(j), b});
  }
  return rows;
}

std::optional<std::vector<int>> tension_flips(const L1Problem& p, const std::vector<std::vector<std::pair<int, int>>>& rows) {
  std::vector<std::tuple<int, int, bool>> pairs;
  for (const auto& row : rows) {
    if (row.size() > 2) return std::nullopt;
    for (const auto& [j, b] : row) {
      if (b != 1 && b != -1) return std::nullopt;
    }
    if (row.size() == 2) {
      if (row[0].first == row[1].first) return std::nullopt;
      pairs.emplace_back(row[0].first, row[1].first, row[0].second == row[1].second);
    }
  }
  return two_color(p.num_cols(), pairs);
}

L1Solution solve_flow_form(const L1Problem& p, const std::vector<int>& flip) {
  const int m = static_cast<int>(p.num_rows());
  const int ground = m;
  const Integer dc = common_den({&p.rhs});
  const Integer dw = common_den({&p.row_weight, &p.col_weight});
  MinCostFlow mcf(m + 1);
  i64 total_supply = 0;
  for (int r = 0; r < m; ++r) {
    const Rational c = p.rhs[static_cast<std::size_t>(r)] * (flip[static_cast<std::size_t>(r)] ? -1 : 1);
    const i64 s = checked_i64(Rational(c * dc));
    mcf.add_supply(r, s);
    mcf.add_supply(ground, -s);
    total_supply += s > 0 ? s : -s;
    if (total_supply > (i64{1} << 52)) throw CapabilityError("supply exceeds 64-bit network range");
  }
  const i64 cap = total_supply + 1;
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> col_arcs;
  for (std::size_t j = 0; j < p.num_cols(); ++j) {
    const auto& col = p.columns[j];
    const i64 cost = checked_i64(Rational(p.col_weight[j] * dw));
    int head = ground;
    int tail = ground;
    for (const auto& [r, b] : col) {
      const int sb = flip[static_cast<std::size_t>(r)] ? -b : b;
      if (sb > 0) head = r;
      else tail = r;
    }
    if (col.empty()) {
      col_arcs.push_back({{-1, -1}, {-1, -1}});
      continue;
    }
    // Forward arc carries s_j out of the +1 row into the -1 row.
    col_arcs.push_back({mcf.add_arc(head, tail, cap, cost), mcf.add_arc(tail, head, cap, cost)});
  }
  for (int r = 0; r < m; ++r) {
    const i64 cost = checked_i64(Rational(p.row_weight[static_cast<std::size_t>(r)] * dw));
    mcf.add_arc(r, ground, cap, cost);
    mcf.add_arc(ground, r, cap, cost);
  }
  mcf.solve();
  L1Solution sol;
  sol.s.assign(p.num_cols(), Rational(0));
  for (std::size_t j = 0; j < p.num_cols(); ++j) {
    if (col_arcs[j].first.first < 0) continue;
    Rational v(mcf.flow(col_arcs[j].first) - mcf.flow(col_arcs[j].second));
    v /= Rational(dc);
    sol.s[j] = v;
  }
  sol.value = l1_objective(p, sol.s);
  sol.method = "network-flow";
  sol.integral = is_integral(sol.s);
  return sol;
}

L1Solution solve_tension_form(const L1Problem& p, const std::vector<std::vector<std::pair<int, int>>>& rows,
                              const std::vector<int>& flip) {
  const int ncol = static_cast<int>(p.num_cols());
  const int ground = ncol;
  const Integer dc = common_den({&p.rhs});
  const Integer dw = common_den({&p.row_weight, &p.col_weight});
  MinCostFlow mcf(ncol + 1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].empty()) continue;
    int head = ground;
    int tail = ground;
    for (const auto& [j, b] : rows[r]) {
      const int sb = flip[static_cast<std::size_t>(j)] ? -b : b;
      if (sb > 0) head = j;
      else tail = j;
    }
    const i64 cost = checked_i64(Rational(p.rhs[r] * dc));
    const i64 cap = checked_i64(Rational(p.row_weight[r] * dw));
    mcf.add_arc(tail, head, cap, cost);
    mcf.add_arc(head, tail, cap, -cost);
  }
  for (int j = 0; j < ncol; ++j) {
    const i64 cap = checked_i64(Rational(p.col_weight[static_cast<std::size_t>(j)] * dw));
    mcf.add_arc(ground, j, cap, 0);
    mcf.add_arc(j, ground, cap, 0);
  }
  const i128 circulation = mcf.solve();
  // Rows not touching any column contribute a constant.
  Rational constant(0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].empty()) constant += p.row_weight[r] * abs(p.rhs[r]);
  }
  if (circulation > std::numeric_limits<long>::max() || circulation < std::numeric_limits<long>::min()) {
    throw CapabilityError("circulation cost exceeds 64-bit range");
  }
  const Rational target = constant - Rational(Integer(static_cast<long>(circulation))) / Rational(dc * dw);
  const auto& pot = mcf.potentials();
  for (int sign : {1, -1}) {
    L1Solution sol;
    sol.s.assign(p.num_cols(), Rational(0));
    for (int j = 0; j < ncol; ++j) {
      Rational v(sign * (pot[static_cast<std::size_t>(j)] - pot[static_cast<std::size_t>(ground)]));
      v /= Rational(dc);
      sol.s[static_cast<std::size_t>(j)] = flip[static_cast<std::size_t>(j)] ? Rational(-v) : v;
    }
    sol.value = l1_objective(p, sol.s);
    if (sol.value == target) {
      sol.method = "network-tension";
      sol.integral = is_integral(sol.s);
      return sol;
    }
  }
  throw Error("tension solver failed to certify its potentials");
}

}  // namespace

std::string network_form(const L1Problem& p) {
  if (p.modulus != 0) return "";
  if (flow_flips(p)) return "flow";
  if (tension_flips(p, row_view(p))) return "tension";
  return "";
}

L1Solution solve_l1_network(const L1Problem& p) {
  if (p.modulus != 0) throw CapabilityError("network back-end does not support residue coefficients");
  if (auto flips = flow_flips(p)) return solve_flow_form(p, *flips);
  const auto rows = row_view(p);
  if (auto flips = tension_flips(p, rows)) return solve_tension_form(p, rows, *flips);
  throw CapabilityError("problem has no network structure");
}

L1Solution solve_l1_simplex(const L1Problem& p) {
  if (p.modulus != 0) throw CapabilityError("LP back-end does not support residue coefficients");
  const std::size_t m = p.num_rows();
  const std::size_t n = p.num_cols();
  // Variables: s+ (n), s- (n), r+ (m), r- (m).
  LinearProgram lp;
  lp.num_vars = 2 * n + 2 * m;
  lp.objective.assign(lp.num_vars, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    lp.objective[j] = p.col_weight[j];
    lp.objective[n + j] = p.col_weight[j];
  }
  for (std::size_t r = 0; r < m; ++r) {
    lp.objective[2 * n + r] = p.row_weight[r];
    lp.objective[2 * n + m + r] = p.row_weight[r];
  }
  lp.rows.resize(m);
  for (std::size_t r = 0; r < m; ++r) {
    lp.rows[r].sense = Sense::eq;
    lp.rows[r].rhs = p.rhs[r];
    lp.rows[r].coeffs.push_back({2 * n + r, Rational(1)});
    lp.rows[r].coeffs.push_back({2 * n + m + r, Rational(-1)});
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& [r, b] : p.columns[j]) {
      lp.rows[static_cast<std::size_t>(r)].coeffs.push_back({j, Rational(b)});
      lp.rows[static_cast<std::size_t>(r)].coeffs.push_back({n + j, Rational(-b)});
    }
  }
  const LpResult res = solve_lp(lp);
  if (res.status != LpStatus::optimal) throw Error("L1 linear program did not reach an optimum");
  L1Solution sol;
  sol.s.resize(n);
  for (std::size_t j = 0; j < n; ++j) sol.s[j] = res.x[j] - res.x[n + j];
  sol.value = l1_objective(p, sol.s);
  sol.method = "simplex";
  sol.integral = is_integral(sol.s);
  return sol;
}

L1Solution solve_l1_exhaustive(const L1Problem& p, const ExhaustiveOptions& options) {
  const std::size_t n = p.num_cols();
  const std::size_t m = p.num_rows();
  if (n > options.max_columns) {
    throw CapabilityError("exhaustive search limited to " + std::to_string(options.max_columns) + " columns, got " +
                          std::to_string(n));
  }
  if (options.values.empty()) throw DomainError("empty value set for exhaustive search");
  RationalVector vals = options.values;
  const Integer dv = common_den({&p.rhs, &vals});
  const Integer dw = common_den({&p.row_weight, &p.col_weight});
  std::vector<i64> val(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) val[i] = checked_i64(Rational(vals[i] * dv));
  std::vector<i64> res(m);
  std::vector<i64> rw(m);
  std::vector<i64> cw(n);
  for (std::size_t r = 0; r < m; ++r) {
    res[r] = checked_i64(Rational(p.rhs[r] * dv));
    rw[r] = checked_i64(Rational(p.row_weight[r] * dw));
  }
  for (std::size_t j = 0; j < n; ++j) cw[j] = checked_i64(Rational(p.col_weight[j] * dw));
  const i64 mod = p.modulus == 0 ? 0 : checked_i64(Rational(Integer(static_cast<long>(p.modulus)) * dv));
  auto norm = [mod](i64 x) -> i128 {
    if (mod == 0) return x < 0 ? -x : x;
    i64 y = x % mod;
    if (y < 0) y += mod;
    return std::min(y, mod - y);
  };
  auto vnorm = [&](i64 x) -> i128 { return norm(x); };

  std::vector<std::size_t> digit(n, 0);
  std::vector<int> dir(n, 1);
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& [r, b] : p.columns[j]) res[static_cast<std::size_t>(r)] -= b * val[0];
  }
  i128 col_part = 0;
  for (std::size_t j = 0; j < n; ++j) col_part += cw[j] * vnorm(val[0]);
  i128 row_part = 0;
  for (std::size_t r = 0; r < m; ++r) row_part += rw[r] * norm(res[r]);
  i128 best = col_part + row_part;
  std::vector<std::size_t> best_digit = digit;
  const std::size_t q = val.size();
  while (q > 1) {
    std::size_t j = 0;
    for (; j < n; ++j) {
      const long next = static_cast<long>(digit[j]) + dir[j];
      if (next >= 0 && next < static_cast<long>(q)) break;
      dir[j] = -dir[j];
    }
    if (j == n) break;
    const std::size_t old = digit[j];
    digit[j] = static_cast<std::size_t>(static_cast<long>(old) + dir[j]);
    const i64 delta = val[digit[j]] - val[old];
    col_part += cw[j] * (vnorm(val[digit[j]]) - vnorm(val[old]));
    for (const auto& [r, b] : p.columns[j]) {
      const auto rr = static_cast<std::size_t>(r);
      row_part -= rw[rr] * norm(res[rr]);
      res[rr] -= b * delta;
      row_part += rw[rr] * norm(res[rr]);
    }
    if (col_part + row_part < best) {
      best = col_part + row_part;
      best_digit = digit;
    }
  }
  L1Solution sol;
  sol.s.resize(n);
  for (std::size_t j = 0; j < n; ++j) sol.s[j] = vals[best_digit[j]];
  sol.value = l1_objective(p, sol.s);
  sol.method = "exhaustive";
  sol.integral = is_integral(sol.s);
  return sol;
}

L1Solution solve_l1(const L1Problem& p, L1Backend backend, const ExhaustiveOptions& exhaustive) {
  switch (backend) {
    case L1Backend::exhaustive:
      return solve_l1_exhaustive(p, exhaustive);
    case L1Backend::network:
      return solve_l1_network(p);
    case L1Backend::simplex:
      return solve_l1_simplex(p);
    case L1Backend::automatic:
      break;
  }
  if (p.modulus != 0) return solve_l1_exhaustive(p, exhaustive);
  if (p.num_cols() == 0) {
    L1Solution sol;
    sol.value = l1_objective(p, sol.s);
    sol.method = "trivial";
    return sol;
  }
  try {
    return solve_l1_network(p);
  } catch (const CapabilityError&) {
    return solve_l1_simplex(p);
  }
}

L1Backend parse_backend(const std::string& name) {
  if (name == "auto" || name == "automatic" || name == "lp") return L1Backend::automatic;
  if (name == "network") return L1Backend::network;
  if (name == "simplex") return L1Backend::simplex;
  if (name == "exhaustive") return L1Backend::exhaustive;
  throw ParseError("unknown backend '" + name + "'");
}

std::string backend_name(L1Backend b) {
  switch (b) {
    case L1Backend::automatic:
      return "auto";
    case L1Backend::network:
      return "network";
    case L1Backend::simplex:
      return "simplex";
    case L1Backend::exhaustive:
      return "exhaustive";
  }
  return "?";
}

L1Backend backend_from_env() {
  const char* env = std::getenv("FLATCHAIN_LP_BACKEND");
  if (env == nullptr || *env == '\0') return L1Backend::automatic;
  return parse_backend(env);
}

}  // namespace flatchain
