#pragma once

#include <cstdint>
#include <vector>

namespace toricneg {

// Dense GF(2) matrix, rows stored as 64-bit word vectors.
class Gf2Matrix {
public:
  Gf2Matrix() = default;
  explicit Gf2Matrix(int cols) : cols_(cols), words_((cols + 63) / 64) {}

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }

  void add_row(const std::vector<std::uint64_t>& row) { rows_.push_back(row); }

  void add_row_from_support(const std::vector<int>& support) {
    std::vector<std::uint64_t> row(words_, 0);
    for (int b : support) row[b / 64] ^= (std::uint64_t{1} << (b % 64));
    rows_.push_back(std::move(row));
  }

  bool get(int r, int c) const {
    return (rows_[r][c / 64] >> (c % 64)) & 1;
  }

  // Row rank by Gaussian elimination over GF(2); does not modify *this.
  int rank() const {
    std::vector<std::vector<std::uint64_t>> m = rows_;
    int rk = 0;
    for (int c = 0; c < cols_ && rk < static_cast<int>(m.size()); ++c) {
      int pivot = -1;
      for (int r = rk; r < static_cast<int>(m.size()); ++r) {
        if ((m[r][c / 64] >> (c % 64)) & 1) { pivot = r; break; }
      }
      if (pivot < 0) continue;
      std::swap(m[rk], m[pivot]);
      for (int r = 0; r < static_cast<int>(m.size()); ++r) {
        if (r != rk && ((m[r][c / 64] >> (c % 64)) & 1)) {
          for (int w = 0; w < words_; ++w) m[r][w] ^= m[rk][w];
        }
      }
      ++rk;
    }
    return rk;
  }

  // True iff `row` lies in the row space.
  bool in_row_space(std::vector<std::uint64_t> row) const {
    Gf2Matrix with(cols_);
    with.rows_ = rows_;
    with.rows_.push_back(std::move(row));
    return with.rank() == rank();
  }

private:
  int cols_ = 0;
  int words_ = 0;
  std::vector<std::vector<std::uint64_t>> rows_;
};

}  // namespace toricneg
