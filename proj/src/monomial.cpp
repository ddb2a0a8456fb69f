#include "jordan/monomial.hpp"

#include "jordan/error.hpp"

namespace jordan {

MonomialTree MonomialTree::leaf(std::size_t slot) {
  if (slot == 0) throw Error(ErrorCode::ArityMismatch, "monomial slots are 1-based");
  MonomialTree t;
  t.slot_ = slot;
  return t;
}

MonomialTree MonomialTree::node(MonomialTree left, MonomialTree right) {
  MonomialTree t;
  t.degree_ = left.degree_ + right.degree_;
  t.left_ = std::make_shared<const MonomialTree>(std::move(left));
  t.right_ = std::make_shared<const MonomialTree>(std::move(right));
  return t;
}

MonomialTree MonomialTree::canonical(std::size_t degree) {
  if (degree == 0) throw Error(ErrorCode::ArityMismatch, "monomial degree must be at least 1");
  MonomialTree t = leaf(degree);
  for (std::size_t s = degree - 1; s >= 1; --s) t = node(leaf(s), std::move(t));
  return t;
}

namespace {

std::vector<MonomialTree> trees_over(std::size_t first, std::size_t last) {
  if (first == last) return {MonomialTree::leaf(first)};
  std::vector<MonomialTree> out;
  // Smallest left subtree first, so the right-nested tree comes first.
  for (std::size_t split = first; split < last; ++split) {
    for (const auto& l : trees_over(first, split))
      for (const auto& r : trees_over(split + 1, last)) out.push_back(MonomialTree::node(l, r));
  }
  return out;
}

}  // namespace

std::vector<MonomialTree> MonomialTree::all_trees(std::size_t degree) {
  if (degree == 0) throw Error(ErrorCode::ArityMismatch, "monomial degree must be at least 1");
  return trees_over(1, degree);
}

std::vector<std::size_t> MonomialTree::slots() const {
  if (is_leaf()) return {slot_};
  auto out = left_->slots();
  auto r = right_->slots();
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

std::string MonomialTree::to_string() const {
  if (is_leaf()) return "x" + std::to_string(slot_);
  auto wrap = [](const MonomialTree& t) { return t.is_leaf() ? t.to_string() : "(" + t.to_string() + ")"; };
  return wrap(*left_) + wrap(*right_);
}

bool operator==(const MonomialTree& a, const MonomialTree& b) {
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return a.slot_ == b.slot_;
  return *a.left_ == *b.left_ && *a.right_ == *b.right_;
}

namespace {

Element eval_tree(const Algebra& a, const MonomialTree& t, std::span<const Element> args) {
  if (t.is_leaf()) {
    if (t.slot() > args.size()) throw Error(ErrorCode::ArityMismatch, "monomial slot out of range");
    return args[t.slot() - 1];
  }
  return multiply(a, eval_tree(a, t.left(), args), eval_tree(a, t.right(), args));
}

}  // namespace

Element monomial_eval(const Algebra& a, const MonomialTree& tree, std::span<const Element> args) {
  if (args.size() != tree.degree()) {
    throw Error(ErrorCode::ArityMismatch, "monomial of degree " + std::to_string(tree.degree()) + " given " +
                                              std::to_string(args.size()) + " arguments");
  }
  for (const auto& x : args) require_same_algebra(a, *x.algebra());
  return eval_tree(a, tree, args);
}

Element xi_eval(const Algebra& a, const Element& z, std::size_t i, std::span<const Element> args) {
  if (i < 1 || i + args.size() < 2) {
    throw Error(ErrorCode::ArityMismatch, "xi needs at least one repeated slot and total degree >= 2");
  }
  std::vector<Element> full(i, z);
  full.insert(full.end(), args.begin(), args.end());
  return monomial_eval(a, MonomialTree::canonical(full.size()), full);
}

MonomialProgram::MonomialProgram(const MonomialTree& tree) : degree(tree.degree()) {
  if (degree >= 64) throw Error(ErrorCode::ArityMismatch, "monomial degree above 63");
  auto emit = [this](auto&& self, const MonomialTree& t) -> void {
    if (t.is_leaf()) {
      if (t.slot() > degree) throw Error(ErrorCode::ArityMismatch, "monomial slot out of range");
      ops.push_back(t.slot());
      return;
    }
    self(self, t.left());
    self(self, t.right());
    ops.push_back(0);
  };
  emit(emit, tree);
}

}  // namespace jordan
