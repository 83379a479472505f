// Copyright 2026 The chorefair Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chorefair/oracle.hpp"

#include <optional>

#include "chorefair/errors.hpp"

namespace chorefair {
namespace {

void check_budget(const Instance& inst, std::int64_t budget) {
  std::int64_t states = 1;
  for (int k = 0; k < inst.m(); ++k) {
    if (states > budget / inst.n()) {
      throw Error(ErrorKind::BudgetExceeded,
                  std::to_string(inst.n()) + "^" + std::to_string(inst.m()) +
                      " allocations exceed the budget of " + std::to_string(budget));
    }
    states *= inst.n();
  }
  if (states > budget) {
    throw Error(ErrorKind::BudgetExceeded, "state count exceeds the budget");
  }
}

// Integer costs: machine words with 128-bit products when every row fits,
// GMP integers otherwise.
struct Fast {
  using T = std::int64_t;
  using Wide = __int128;
  static Wide mul(T a, T b) { return static_cast<Wide>(a) * b; }
};
struct Big {
  using T = mpz_class;
  using Wide = mpz_class;
  static Wide mul(const T& a, const T& b) { return a * b; }
};

template <class Num>
class Enumerator {
  using T = typename Num::T;

 public:
  // num/den with den == 0 meaning infinity.
  struct Ratio {
    T num;
    T den;
    bool infinite() const { return den == 0; }
  };
  // <0, 0, >0 as a < b, a == b, a > b.
  static int compare(const Ratio& a, const Ratio& b) {
    if (a.infinite() || b.infinite()) return static_cast<int>(a.infinite()) - static_cast<int>(b.infinite());
    const auto l = Num::mul(a.num, b.den);
    const auto r = Num::mul(b.num, a.den);
    return l < r ? -1 : (l > r ? 1 : 0);
  }

  Enumerator(std::vector<std::vector<T>> costs, bool prune, std::optional<Ratio> target)
      : c_(std::move(costs)), n_(static_cast<int>(c_.size())),
        m_(n_ ? static_cast<int>(c_[0].size()) : 0), prune_(prune), target_(target) {
    load_.assign(n_, std::vector<T>(n_, T(0)));
    own_min_.assign(n_, T(0));
    count_.assign(n_, 0);
    owner_.assign(m_, -1);
    remaining_.assign(n_, T(0));
    for (int i = 0; i < n_; ++i) {
      for (int e = 0; e < m_; ++e) remaining_[i] += c_[i][e];
    }
  }

  void run() { descend(0); }

  std::int64_t states = 0;
  std::optional<Ratio> best;
  std::vector<Agent> best_owner;
  bool found_target = false;

 private:
  // True when r rules the candidate out.
  bool beaten(const Ratio& r) const {
    if (target_) return compare(r, *target_) > 0;
    return best && compare(r, *best) >= 0;
  }

  bool pruned() const {
    if (!target_ && !best) return false;
    for (int i = 0; i < n_; ++i) {
      if (count_[i] == 0) continue;
      const T rem = load_[i][i] - own_min_[i];
      if (rem == 0) continue;
      for (int j = 0; j < n_; ++j) {
        if (j == i) continue;
        if (beaten(Ratio{rem, T(load_[i][j] + remaining_[i])})) return true;
      }
    }
    return false;
  }

  void leaf() {
    ++states;
    Ratio worst{T(0), T(1)};
    for (int i = 0; i < n_; ++i) {
      if (count_[i] == 0) continue;
      const T rem = load_[i][i] - own_min_[i];
      if (rem == 0) continue;
      for (int j = 0; j < n_; ++j) {
        if (j == i) continue;
        const Ratio r{rem, load_[i][j]};
        if (beaten(r)) return;
        if (compare(r, worst) > 0) worst = r;
      }
    }
    if (beaten(worst)) return;
    best = worst;
    best_owner = owner_;
    if (target_) found_target = true;
  }

  void descend(int e) {
    if (found_target) return;
    if (e == m_) {
      leaf();
      return;
    }
    if (prune_ && pruned()) return;
    for (int i = 0; i < n_; ++i) remaining_[i] -= c_[i][e];
    for (int a = 0; a < n_ && !found_target; ++a) {
      const T saved_min = own_min_[a];
      for (int i = 0; i < n_; ++i) load_[i][a] += c_[i][e];
      if (count_[a] == 0 || c_[a][e] < own_min_[a]) own_min_[a] = c_[a][e];
      ++count_[a];
      owner_[e] = a;
      descend(e + 1);
      owner_[e] = -1;
      --count_[a];
      own_min_[a] = saved_min;
      for (int i = 0; i < n_; ++i) load_[i][a] -= c_[i][e];
    }
    for (int i = 0; i < n_; ++i) remaining_[i] += c_[i][e];
  }

  std::vector<std::vector<T>> c_;
  int n_;
  int m_;
  bool prune_;
  std::optional<Ratio> target_;
  std::vector<std::vector<T>> load_;  // load_[i][a]: agent i's cost of bundle a
  std::vector<T> own_min_;
  std::vector<int> count_;
  std::vector<Agent> owner_;
  std::vector<T> remaining_;  // agent i's cost of unassigned items
};

// Each row multiplied by the lcm of its denominators.
std::vector<std::vector<mpz_class>> integer_rows(const Instance& inst) {
  std::vector<std::vector<mpz_class>> rows(inst.n());
  for (Agent i = 0; i < inst.n(); ++i) {
    mpz_class l = 1;
    for (const Rational& c : inst.row(i)) l = lcm(l, c.denominator());
    for (const Rational& c : inst.row(i)) {
      rows[i].push_back(c.numerator() * (l / c.denominator()));
    }
  }
  return rows;
}

bool fits_machine_words(const std::vector<std::vector<mpz_class>>& rows) {
  const mpz_class limit = mpz_class(1) << 62;
  for (const auto& row : rows) {
    mpz_class sum = 0;
    for (const auto& v : row) sum += v;
    if (sum >= limit) return false;
  }
  return true;
}

Rational to_rational(const mpz_class& num, const mpz_class& den) {
  return Rational(mpq_class(num, den));
}
Rational to_rational(std::int64_t num, std::int64_t den) {
  return Rational(mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))));
}

template <class Num>
OracleResult solve(const Instance& inst, std::vector<std::vector<typename Num::T>> rows,
                   bool prune, bool efx_only, bool* exists) {
  using T = typename Num::T;
  std::optional<typename Enumerator<Num>::Ratio> target;
  if (efx_only) target = typename Enumerator<Num>::Ratio{T(1), T(1)};
  Enumerator<Num> en(std::move(rows), prune || efx_only, target);
  en.run();

  OracleResult out;
  out.states_examined = en.states;
  if (exists) *exists = en.found_target;
  if (!en.best) return out;
  out.best_alpha = en.best->infinite() ? ExtRational::infinity()
                                       : ExtRational(to_rational(en.best->num, en.best->den));
  Allocation alloc(inst.n());
  for (Item e = 0; e < inst.m(); ++e) alloc.assign(en.best_owner[e], e);
  out.best_allocation = std::move(alloc);
  return out;
}

OracleResult dispatch(const Instance& inst, bool prune, bool efx_only, bool* exists) {
  auto rows = integer_rows(inst);
  if (!fits_machine_words(rows)) {
    return solve<Big>(inst, std::move(rows), prune, efx_only, exists);
  }
  std::vector<std::vector<std::int64_t>> small(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& v : rows[i]) small[i].push_back(v.get_si());
  }
  return solve<Fast>(inst, std::move(small), prune, efx_only, exists);
}

}  // namespace

OracleResult oracle_min_alpha(const Instance& inst, const OracleOptions& options) {
  check_budget(inst, options.budget);
  return dispatch(inst, options.prune, false, nullptr);
}

bool efx_exists(const Instance& inst, std::int64_t budget) {
  check_budget(inst, budget);
  bool exists = false;
  dispatch(inst, true, true, &exists);
  return exists;
}

}  // namespace chorefair
