#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace tnet {

// Exact nonnegative integer; model counts routinely exceed 64 bits.
using Count = mpz_class;

/// Index of a port-ordered assignment in a dense table. Port 0 is the most
/// significant bit.
std::uint64_t encode_assignment(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> decode_assignment(std::uint64_t index, int arity);

/// Per-vertex function over Boolean edge assignments.
///
/// Dense tensors hold 2^arity entries in big-endian port order; symmetric
/// tensors hold arity+1 weights indexed by Hamming weight.
class Tensor {
 public:
  enum class Kind { Dense, Symmetric };

  Tensor() : Tensor(Kind::Dense, 0, {Count(1)}) {}

  static Tensor dense(int arity, std::vector<Count> table);
  static Tensor symmetric(int arity, std::vector<Count> weights);
  // Convenience for literals in gadget tables and tests.
  static Tensor dense(int arity, std::initializer_list<long> table);
  static Tensor symmetric(int arity, std::initializer_list<long> weights);

  Kind kind() const { return kind_; }
  bool is_symmetric() const { return kind_ == Kind::Symmetric; }
  int arity() const { return arity_; }

  // Table for dense tensors, weights for symmetric ones.
  const std::vector<Count>& values() const { return values_; }

  // Value at a big-endian assignment index.
  const Count& at(std::uint64_t index) const;
  const Count& at(std::span<const std::uint8_t> bits) const;

  Tensor to_dense() const;

  // Weight vector when every dense entry depends only on Hamming weight.
  bool symmetric_weights(std::vector<Count>& out) const;

  bool is_zero() const;

  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.kind_ == b.kind_ && a.arity_ == b.arity_ && a.values_ == b.values_;
  }

 private:
  Tensor(Kind kind, int arity, std::vector<Count> values);

  Kind kind_;
  int arity_;
  std::vector<Count> values_;
};

// Largest arity that may be materialised densely.
inline constexpr int kMaxDenseArity = 30;

namespace functions {

Tensor equality(int k);        // [1,0,...,0,1]
Tensor disequality2();         // [0,1,0]
Tensor not_all_equal3();       // [0,1,1,0]
Tensor disjunction(int d);     // [0,1,...,1]
Tensor parity3();              // [0,1,0,1]
Tensor two_of_three();         // [0,0,1,0]

}  // namespace functions

}  // namespace tnet
