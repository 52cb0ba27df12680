#include "p8q/tables.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace p8q {

unsigned long Valuation::value() const
{
  if (!value_)
    throw std::logic_error("valuation of zero is infinite");
  return *value_;
}

std::string Valuation::to_string() const
{
  return value_ ? std::to_string(*value_) : std::string("inf");
}

Valuation operator+(Valuation a, Valuation b)
{
  if (a.is_infinite() || b.is_infinite())
    return Valuation::infinite();
  return Valuation(*a.value_ + *b.value_);
}

std::strong_ordering operator<=>(const Valuation& a, const Valuation& b)
{
  if (a.is_infinite() && b.is_infinite())
    return std::strong_ordering::equal;
  if (a.is_infinite())
    return std::strong_ordering::greater;
  if (b.is_infinite())
    return std::strong_ordering::less;
  return *a.value_ <=> *b.value_;
}

Valuation v2(const mpz_class& n)
{
  if (sgn(n) == 0)
    return Valuation::infinite();
  return Valuation(mpz_scan1(n.get_mpz_t(), 0));
}

// ---------------------------------------------------------------- MTable

mpz_class MTable::entry(std::size_t j, std::size_t k)
{
  if (j == 0 || k == 0)
    throw std::invalid_argument("m_entry: indices start at 1");
  {
    std::shared_lock lock(mutex_);
    if (j <= rows_.size() && k <= cols_)
      return rows_[j - 1][k - 1];
  }
  std::unique_lock lock(mutex_);
  if (j > rows_.size() || k > cols_)
    extend(std::max(j, rows_.size() + rows_.size() / 2), std::max(k, cols_ + cols_ / 2));
  return rows_[j - 1][k - 1];
}

void MTable::extend(std::size_t rows, std::size_t cols)
{
  rows = std::max(rows, rows_.size());
  cols = std::max(cols, cols_);
  auto value = [this](std::size_t j, std::size_t k) -> mpz_class {
    if (j == 1)
      return k == 1 ? 8 : 0;
    if (j == 2)
      return k == 1 ? 1 : (k == 2 ? 128 : 0);
    if (k == 1)
      return 0;
    return 16 * rows_[j - 2][k - 2] + rows_[j - 3][k - 2];
  };
  // New columns of existing rows first, in row order, so the rows a new
  // entry reads from are already complete.
  for (std::size_t j = 1; j <= rows_.size(); ++j) {
    auto& row = rows_[j - 1];
    for (std::size_t k = row.size() + 1; k <= cols; ++k)
      row.push_back(value(j, k));
  }
  for (std::size_t j = rows_.size() + 1; j <= rows; ++j) {
    std::vector<mpz_class> row;
    row.reserve(cols);
    rows_.push_back(std::move(row));
    for (std::size_t k = 1; k <= cols; ++k) {
      mpz_class v = value(j, k);
      rows_.back().push_back(std::move(v));
    }
  }
  cols_ = cols;
}

// ---------------------------------------------------------------- XTable

std::size_t XTable::stored_width(unsigned alpha)
{
  return (std::size_t{1} << alpha) - 1;
}

std::pair<std::size_t, std::size_t> XTable::window(std::size_t j)
{
  const std::size_t half = (j + 1) / 2;
  return {half > 1 ? half - 1 : 1, 2 * j};
}

mpz_class XTable::combine(unsigned alpha, std::size_t j, const std::vector<mpz_class>& prev)
{
  // prev is row alpha - 1; odd predecessors pair with m_{3i, i+j}, even
  // ones with m_{3i+1, i+j}.
  const bool odd_prev = (alpha - 1) % 2 == 1;
  auto [lo, hi] = window(j);
  hi = std::min(hi, prev.size());
  mpz_class sum = 0;
  for (std::size_t i = lo; i <= hi; ++i) {
    const mpz_class& x = prev[i - 1];
    if (sgn(x) == 0)
      continue;
    const std::size_t row = odd_prev ? 3 * i : 3 * i + 1;
    sum += x * m_.entry(row, i + j);
  }
  return sum;
}

void XTable::extend(unsigned alpha)
{
  if (rows_.empty()) {
    std::vector<mpz_class> first(stored_width(1));
    first[0] = 8;
    rows_.push_back(std::move(first));
  }
  while (rows_.size() < alpha) {
    const unsigned next = static_cast<unsigned>(rows_.size()) + 1;
    std::vector<mpz_class> row(stored_width(next));
    for (std::size_t j = 1; j <= row.size(); ++j)
      row[j - 1] = combine(next, j, rows_.back());
    rows_.push_back(std::move(row));
  }
}

mpz_class XTable::entry(unsigned alpha, std::size_t j)
{
  if (alpha == 0 || j == 0)
    throw std::invalid_argument("x_entry: indices start at 1");
  if (alpha > max_alpha)
    throw std::out_of_range("x_entry: alpha " + std::to_string(alpha) + " exceeds the supported maximum "
                            + std::to_string(max_alpha));
  {
    std::shared_lock lock(mutex_);
    if (alpha <= rows_.size()) {
      const auto& row = rows_[alpha - 1];
      if (j <= row.size())
        return row[j - 1];
      if (alpha == 1)
        return 0;
      return combine(alpha, j, rows_[alpha - 2]);
    }
  }
  {
    std::unique_lock lock(mutex_);
    extend(alpha);
  }
  return entry(alpha, j);
}

MTable& shared_m_table()
{
  static MTable table;
  return table;
}

XTable& shared_x_table()
{
  static XTable table(shared_m_table());
  return table;
}

mpz_class m_entry(std::size_t j, std::size_t k) { return shared_m_table().entry(j, k); }

mpz_class x_entry(unsigned alpha, std::size_t j) { return shared_x_table().entry(alpha, j); }

std::size_t x_support_bound(unsigned alpha)
{
  const std::size_t p = std::size_t{1} << (alpha + 1);
  return alpha % 2 == 0 ? (p - 2) / 3 : (p - 1) / 3;
}

mpz_class x_corner_value(unsigned alpha)
{
  mpz_class v;
  const unsigned long e = 8 * ((1ul << alpha) - 1) - 5ul * alpha;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, e);
  return v;
}

// ---------------------------------------------------------------- checks

namespace {

Report table_report(std::string tag, std::size_t extent)
{
  Report r;
  r.tag = std::move(tag);
  r.order = extent;
  r.mode = CheckMode::valuation_bound;
  return r;
}

void fail(Report& r, std::string detail)
{
  if (!r.pass)
    return;
  r.pass = false;
  r.detail = std::move(detail);
}

} // namespace

Report check_lemma4(std::size_t j_max)
{
  Report r = table_report("L4", j_max);
  for (std::size_t j = 1; j <= j_max; ++j)
    for (std::size_t k = (j + 1) / 2; k <= j; ++k) {
      const long bound = 4 * (2 * static_cast<long>(k) - static_cast<long>(j)) - 1;
      const Valuation v = v2(m_entry(j, k));
      if (!v.is_infinite() && static_cast<long>(v.value()) < bound)
        fail(r, "m_{" + std::to_string(j) + "," + std::to_string(k) + "}: v2 = " + v.to_string()
                    + " < " + std::to_string(bound));
    }
  return r;
}

Report check_lemma5(unsigned alpha_max)
{
  Report r = table_report("L5", alpha_max);
  for (unsigned alpha = 1; alpha <= alpha_max; ++alpha) {
    const unsigned long half = (alpha + 1) / 2;
    for (std::size_t k = 1; k <= XTable::stored_width(alpha); ++k) {
      const unsigned long bound = alpha % 2 == 1 ? 3 * half + 7 * (k - 1) : 3 * (half + 1) + 8 * (k - 1);
      const Valuation v = v2(x_entry(alpha, k));
      const std::string where = "x_{" + std::to_string(alpha) + "," + std::to_string(k) + "}: v2 = "
                                + v.to_string();
      if (v < Valuation(bound))
        fail(r, where + " < " + std::to_string(bound));
      else if (k == 1 && v != Valuation(bound))
        fail(r, where + ", expected equality with " + std::to_string(bound));
    }
  }
  return r;
}

Report check_m_structure(std::size_t j_max)
{
  Report r = table_report("M-rules", j_max);
  r.mode = CheckMode::exact_equality;
  auto where = [](std::size_t j, std::size_t k) {
    return "m_{" + std::to_string(j) + "," + std::to_string(k) + "}";
  };
  for (std::size_t j = 1; j <= j_max; ++j) {
    for (std::size_t k = 1; k <= j_max + 2; ++k) {
      const mpz_class m = m_entry(j, k);
      if (k > j && m != 0)
        fail(r, where(j, k) + " nonzero above the diagonal");
      if (j > 2 * k && m != 0)
        fail(r, where(j, k) + " nonzero below j = 2k");
    }
    mpz_class diag;
    mpz_ui_pow_ui(diag.get_mpz_t(), 2, 4 * j - 1);
    if (m_entry(j, j) != diag)
      fail(r, where(j, j) + " != 2^" + std::to_string(4 * j - 1));
    if (2 * j <= j_max && m_entry(2 * j, j) != 1)
      fail(r, where(2 * j, j) + " != 1");
  }
  return r;
}

Report check_x_structure(unsigned alpha_max)
{
  Report r = table_report("X-rules", alpha_max);
  r.mode = CheckMode::exact_equality;
  for (unsigned alpha = 1; alpha <= alpha_max; ++alpha) {
    const std::size_t bound = x_support_bound(alpha);
    for (std::size_t j = bound + 1; j <= XTable::stored_width(alpha) + 2; ++j)
      if (x_entry(alpha, j) != 0)
        fail(r, "x_{" + std::to_string(alpha) + "," + std::to_string(j) + "} nonzero beyond "
                    + std::to_string(bound));
    if (x_entry(alpha, bound) != x_corner_value(alpha))
      fail(r, "x_{" + std::to_string(alpha) + "," + std::to_string(bound) + "} is not 2^"
                  + std::to_string(8 * ((1ul << alpha) - 1) - 5ul * alpha));
  }
  return r;
}

} // namespace p8q
