#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "jordan/algebra.hpp"

namespace jordan {

/// Binary tree of a nonassociative monomial; leaves carry 1-based variable slots.
class MonomialTree {
 public:
  static MonomialTree leaf(std::size_t slot);
  static MonomialTree node(MonomialTree left, MonomialTree right);

  /// x1(x2(...(x_{n-1} x_n)...))
  static MonomialTree canonical(std::size_t degree);
  /// Every bracketing of x1 x2 ... xn, Catalan(n-1) trees, in a fixed order.
  static std::vector<MonomialTree> all_trees(std::size_t degree);

  bool is_leaf() const noexcept { return !left_; }
  std::size_t slot() const noexcept { return slot_; }
  const MonomialTree& left() const { return *left_; }
  const MonomialTree& right() const { return *right_; }
  std::size_t degree() const noexcept { return degree_; }
  /// Leaf slots in left-to-right order.
  std::vector<std::size_t> slots() const;

  /// "x1(x2x3)" style rendering.
  std::string to_string() const;

  friend bool operator==(const MonomialTree& a, const MonomialTree& b);

 private:
  MonomialTree() = default;
  std::size_t slot_ = 0;
  std::size_t degree_ = 1;
  std::shared_ptr<const MonomialTree> left_;
  std::shared_ptr<const MonomialTree> right_;
};

/// Leaf(i) -> args[i-1], Node(l, r) -> eval(l) * eval(r).
/// Throws ArityMismatch when args.size() != degree or a slot is out of range.
Element monomial_eval(const Algebra& a, const MonomialTree& tree, std::span<const Element> args);

/// Canonical monomial of degree i + args.size() with its first i slots set to z.
Element xi_eval(const Algebra& a, const Element& z, std::size_t i, std::span<const Element> args);

/// Postfix program for evaluating a tree on small integer-indexed carriers.
struct MonomialProgram {
  // slot >= 1 pushes args[slot-1]; slot == 0 multiplies the top two entries.
  std::vector<std::size_t> ops;
  std::size_t degree = 0;

  explicit MonomialProgram(const MonomialTree& tree);

  template <typename Value, typename Mul>
  Value run(std::span<const Value> args, Mul&& mul) const {
    Value stack[64]{};
    std::size_t top = 0;
    for (std::size_t op : ops) {
      if (op != 0) {
        stack[top++] = args[op - 1];
      } else {
        Value r = mul(stack[top - 2], stack[top - 1]);
        top -= 2;
        stack[top++] = r;
      }
    }
    return stack[0];
  }
};

}  // namespace jordan
