#include "aifl/bn/factor.hpp"

#include <algorithm>
#include <stdexcept>

namespace aifl::bn {

std::size_t Factor::table_size() const {
  std::size_t n = 1;
  for (int c : cards) n *= static_cast<std::size_t>(c);
  return n;
}

bool Factor::contains(int var) const { return position_of(var) >= 0; }

int Factor::position_of(int var) const {
  for (std::size_t i = 0; i < scope.size(); ++i) {
    if (scope[i] == var) return static_cast<int>(i);
  }
  return -1;
}

std::size_t Factor::index_of(const std::vector<int>& states) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < scope.size(); ++i) {
    idx = idx * static_cast<std::size_t>(cards[i]) + static_cast<std::size_t>(states[i]);
  }
  return idx;
}

Factor Factor::unit() {
  Factor f;
  f.values = {1.0};
  return f;
}

namespace {

// Advances a mixed-radix digit vector; returns false after the last combo.
bool advance(std::vector<int>& digits, const std::vector<int>& cards) {
  for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
    if (++digits[i] < cards[i]) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace

Factor factor_product(const Factor& a, const Factor& b) {
  Factor out;
  {
    std::size_t ia = 0, ib = 0;
    while (ia < a.scope.size() || ib < b.scope.size()) {
      if (ib == b.scope.size() || (ia < a.scope.size() && a.scope[ia] < b.scope[ib])) {
        out.scope.push_back(a.scope[ia]);
        out.cards.push_back(a.cards[ia]);
        ++ia;
      } else if (ia == a.scope.size() || b.scope[ib] < a.scope[ia]) {
        out.scope.push_back(b.scope[ib]);
        out.cards.push_back(b.cards[ib]);
        ++ib;
      } else {
        if (a.cards[ia] != b.cards[ib]) {
          throw std::invalid_argument("factor_product: cardinality mismatch on shared variable");
        }
        out.scope.push_back(a.scope[ia]);
        out.cards.push_back(a.cards[ia]);
        ++ia;
        ++ib;
      }
    }
  }
  // Strides of each merged position inside a and b (0 when absent).
  const std::size_t k = out.scope.size();
  std::vector<std::size_t> stride_a(k, 0), stride_b(k, 0);
  {
    std::size_t s = 1;
    for (int i = static_cast<int>(a.scope.size()) - 1; i >= 0; --i) {
      const int pos = [&] {
        for (std::size_t m = 0; m < k; ++m) {
          if (out.scope[m] == a.scope[i]) return static_cast<int>(m);
        }
        return -1;
      }();
      stride_a[pos] = s;
      s *= static_cast<std::size_t>(a.cards[i]);
    }
    s = 1;
    for (int i = static_cast<int>(b.scope.size()) - 1; i >= 0; --i) {
      const int pos = [&] {
        for (std::size_t m = 0; m < k; ++m) {
          if (out.scope[m] == b.scope[i]) return static_cast<int>(m);
        }
        return -1;
      }();
      stride_b[pos] = s;
      s *= static_cast<std::size_t>(b.cards[i]);
    }
  }
  out.values.assign(out.table_size(), 0.0);
  if (out.values.empty()) return out;
  std::vector<int> digits(k, 0);
  std::size_t linear = 0;
  do {
    std::size_t ia = 0, ib = 0;
    for (std::size_t m = 0; m < k; ++m) {
      ia += stride_a[m] * static_cast<std::size_t>(digits[m]);
      ib += stride_b[m] * static_cast<std::size_t>(digits[m]);
    }
    out.values[linear++] = a.values[ia] * b.values[ib];
  } while (advance(digits, out.cards));
  return out;
}

Factor factor_marginalize(const Factor& f, int var) {
  const int pos = f.position_of(var);
  if (pos < 0) throw std::invalid_argument("factor_marginalize: variable not in scope");
  Factor out;
  for (std::size_t i = 0; i < f.scope.size(); ++i) {
    if (static_cast<int>(i) == pos) continue;
    out.scope.push_back(f.scope[i]);
    out.cards.push_back(f.cards[i]);
  }
  out.values.assign(out.table_size(), 0.0);
  std::vector<int> digits(f.scope.size(), 0);
  std::size_t linear = 0;
  do {
    std::size_t oidx = 0;
    for (std::size_t i = 0; i < f.scope.size(); ++i) {
      if (static_cast<int>(i) == pos) continue;
      const std::size_t card = static_cast<std::size_t>(f.cards[i]);
      oidx = oidx * card + static_cast<std::size_t>(digits[i]);
    }
    out.values[oidx] += f.values[linear++];
  } while (advance(digits, f.cards));
  return out;
}

Factor factor_reduce(const Factor& f, const std::map<int, int>& evidence) {
  Factor out;
  std::vector<int> fixed(f.scope.size(), -1);
  bool any = false;
  for (std::size_t i = 0; i < f.scope.size(); ++i) {
    auto it = evidence.find(f.scope[i]);
    if (it != evidence.end()) {
      if (it->second < 0 || it->second >= f.cards[i]) {
        throw std::invalid_argument("factor_reduce: evidence state out of range");
      }
      fixed[i] = it->second;
      any = true;
    } else {
      out.scope.push_back(f.scope[i]);
      out.cards.push_back(f.cards[i]);
    }
  }
  if (!any) return f;
  out.values.assign(out.table_size(), 0.0);
  std::vector<int> digits(f.scope.size(), 0);
  std::size_t linear = 0;
  do {
    bool match = true;
    for (std::size_t i = 0; i < f.scope.size(); ++i) {
      if (fixed[i] >= 0 && digits[i] != fixed[i]) {
        match = false;
        break;
      }
    }
    if (match) {
      std::size_t oidx = 0;
      for (std::size_t i = 0; i < f.scope.size(); ++i) {
        if (fixed[i] >= 0) continue;
        oidx = oidx * static_cast<std::size_t>(f.cards[i]) + static_cast<std::size_t>(digits[i]);
      }
      out.values[oidx] = f.values[linear];
    }
    ++linear;
  } while (advance(digits, f.cards));
  return out;
}

double factor_sum(const Factor& f) {
  double s = 0.0;
  for (double v : f.values) s += v;
  return s;
}

}  // namespace aifl::bn
