#include "abelmoments/partition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "abelmoments/rational.hpp"

namespace abelmoments {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw DomainError("partition with a negative part");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw DomainError("partition parts must be weakly decreasing");
  }
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
}

Partition Partition::from_conjugate(const std::vector<int>& columns) {
  return Partition(columns).conjugate();
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int Partition::multiplicity(int i) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), i));
}

Partition Partition::conjugate() const {
  std::vector<int> out(parts_.empty() ? 0 : static_cast<std::size_t>(parts_.front()), 0);
  for (int part : parts_) {
    for (int j = 0; j < part; ++j) ++out[static_cast<std::size_t>(j)];
  }
  Partition result;
  result.parts_ = std::move(out);
  return result;
}

long Partition::n_stat() const {
  long total = 0;
  for (std::size_t i = 0; i < parts_.size(); ++i) total += static_cast<long>(i) * parts_[i];
  return total;
}

std::string Partition::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  os << ']';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << p.str(); }

bool interlaces(const Partition& mu, const Partition& lambda) {
  const std::size_t n = std::max(mu.length(), lambda.length()) + 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (lambda[i] < mu[i] || mu[i] < lambda[i + 1]) return false;
  }
  return true;
}

bool contains(const Partition& mu, const Partition& lambda) {
  if (mu.length() > lambda.length()) return false;
  for (std::size_t i = 0; i < mu.length(); ++i) {
    if (mu[i] > lambda[i]) return false;
  }
  return true;
}

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  if (n < 0) return out;
  std::vector<int> current;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      current.push_back(part);
      rec(remaining - part, part);
      current.pop_back();
    }
  };
  rec(n, n);
  return out;
}

std::vector<Partition> enumerate_up_to(int max_size) {
  std::vector<Partition> out;
  for (int n = 0; n <= max_size; ++n) {
    auto level = partitions_of(n);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::vector<Partition> conjugate_interlacing_block(const Partition& nu, int column) {
  const Partition nu_conj = nu.conjugate();
  if (column < nu_conj[0]) return {};
  // μ'_1 = column; μ'_{i+1} ranges over [ν'_{i+1}, ν'_i] for i = 1..len(ν').
  const std::size_t free_columns = nu_conj.length();
  std::vector<int> columns(free_columns + 1, 0);
  columns[0] = column;
  std::vector<Partition> out;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i > free_columns) {
      out.push_back(Partition::from_conjugate(columns));
      return;
    }
    for (int c = nu_conj[i - 1]; c >= nu_conj[i]; --c) {
      columns[i] = c;
      rec(i + 1);
    }
  };
  rec(1);
  return out;
}

std::vector<Partition> enumerate_conjugate_interlacing(const Partition& nu, int first_column_cap) {
  const int min_column = nu.empty() ? 0 : nu.conjugate()[0];
  if (first_column_cap < min_column) {
    throw DomainError("first-column cap " + std::to_string(first_column_cap) + " is below nu'_1 = " +
                      std::to_string(min_column) + "; summation domain is empty");
  }
  std::vector<Partition> out;
  for (int column = min_column; column <= first_column_cap; ++column) {
    auto block = conjugate_interlacing_block(nu, column);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

std::vector<Partition> sub_partitions(const Partition& lambda) {
  std::vector<Partition> out;
  std::vector<int> current(lambda.length(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == lambda.length()) {
      out.emplace_back(current);
      return;
    }
    const int upper = i == 0 ? lambda[0] : std::min(lambda[i], current[i - 1]);
    for (int v = 0; v <= upper; ++v) {
      current[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), GradedOrder{});
  return out;
}

}  // namespace abelmoments
