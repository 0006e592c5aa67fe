#include "tnet/tensor.hpp"

#include <bit>

#include "tnet/error.hpp"

namespace tnet {

std::uint64_t encode_assignment(std::span<const std::uint8_t> bits) {
  std::uint64_t index = 0;
  for (std::uint8_t b : bits) index = (index << 1) | (b & 1u);
  return index;
}

std::vector<std::uint8_t> decode_assignment(std::uint64_t index, int arity) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(arity));
  for (int p = arity - 1; p >= 0; --p) {
    bits[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(index & 1u);
    index >>= 1;
  }
  return bits;
}

Tensor::Tensor(Kind kind, int arity, std::vector<Count> values)
    : kind_(kind), arity_(arity), values_(std::move(values)) {
  if (arity < 0) throw Error(ErrorKind::BadTensor, "negative arity");
  for (const Count& v : values_) {
    if (sgn(v) < 0) throw Error(ErrorKind::BadTensor, "negative tensor entry");
  }
}

Tensor Tensor::dense(int arity, std::vector<Count> table) {
  if (arity < 0 || arity > kMaxDenseArity) {
    throw Error(ErrorKind::BadTensor, "dense arity " + std::to_string(arity) + " out of range");
  }
  if (table.size() != (std::size_t{1} << arity)) {
    throw Error(ErrorKind::BadTensor, "dense table of arity " + std::to_string(arity) +
                                          " needs " + std::to_string(std::size_t{1} << arity) +
                                          " entries, got " + std::to_string(table.size()));
  }
  return Tensor(Kind::Dense, arity, std::move(table));
}

Tensor Tensor::symmetric(int arity, std::vector<Count> weights) {
  if (arity < 0) throw Error(ErrorKind::BadTensor, "negative arity");
  if (weights.size() != static_cast<std::size_t>(arity) + 1) {
    throw Error(ErrorKind::BadTensor, "symmetric tensor of arity " + std::to_string(arity) +
                                          " needs " + std::to_string(arity + 1) + " weights, got " +
                                          std::to_string(weights.size()));
  }
  return Tensor(Kind::Symmetric, arity, std::move(weights));
}

Tensor Tensor::dense(int arity, std::initializer_list<long> table) {
  std::vector<Count> v;
  v.reserve(table.size());
  for (long x : table) v.emplace_back(x);
  return dense(arity, std::move(v));
}

Tensor Tensor::symmetric(int arity, std::initializer_list<long> weights) {
  std::vector<Count> v;
  v.reserve(weights.size());
  for (long x : weights) v.emplace_back(x);
  return symmetric(arity, std::move(v));
}

const Count& Tensor::at(std::uint64_t index) const {
  if (kind_ == Kind::Dense) return values_[index];
  return values_[static_cast<std::size_t>(std::popcount(index))];
}

const Count& Tensor::at(std::span<const std::uint8_t> bits) const {
  if (kind_ == Kind::Dense) return values_[encode_assignment(bits)];
  std::size_t w = 0;
  for (auto b : bits) w += b & 1u;
  return values_[w];
}

Tensor Tensor::to_dense() const {
  if (kind_ == Kind::Dense) return *this;
  if (arity_ > kMaxDenseArity) {
    throw Error(ErrorKind::TooLarge, "symmetric tensor of arity " + std::to_string(arity_) +
                                         " is too large to densify");
  }
  std::vector<Count> table(std::size_t{1} << arity_);
  for (std::uint64_t i = 0; i < table.size(); ++i) {
    table[i] = values_[static_cast<std::size_t>(std::popcount(i))];
  }
  return Tensor(Kind::Dense, arity_, std::move(table));
}

bool Tensor::symmetric_weights(std::vector<Count>& out) const {
  if (kind_ == Kind::Symmetric) {
    out = values_;
    return true;
  }
  std::vector<Count> w(static_cast<std::size_t>(arity_) + 1);
  std::vector<bool> seen(w.size(), false);
  for (std::uint64_t i = 0; i < values_.size(); ++i) {
    auto h = static_cast<std::size_t>(std::popcount(i));
    if (!seen[h]) {
      w[h] = values_[i];
      seen[h] = true;
    } else if (w[h] != values_[i]) {
      return false;
    }
  }
  out = std::move(w);
  return true;
}

bool Tensor::is_zero() const {
  for (const Count& v : values_) {
    if (sgn(v) != 0) return false;
  }
  return true;
}

namespace functions {

Tensor equality(int k) {
  std::vector<Count> w(static_cast<std::size_t>(k) + 1, 0);
  w.front() = 1;
  w.back() = 1;
  return Tensor::symmetric(k, std::move(w));
}

Tensor disequality2() { return Tensor::symmetric(2, {0, 1, 0}); }

Tensor not_all_equal3() { return Tensor::symmetric(3, {0, 1, 1, 0}); }

Tensor disjunction(int d) {
  std::vector<Count> w(static_cast<std::size_t>(d) + 1, 1);
  w.front() = 0;
  return Tensor::symmetric(d, std::move(w));
}

Tensor parity3() { return Tensor::symmetric(3, {0, 1, 0, 1}); }

Tensor two_of_three() { return Tensor::symmetric(3, {0, 0, 1, 0}); }

}  // namespace functions

}  // namespace tnet
