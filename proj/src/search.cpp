#include "jordan/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "jordan/error.hpp"
#include "jordan/monomial.hpp"

namespace jordan {

std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::exhausted: return "exhausted";
    case SearchStatus::node_budget: return "node_budget";
    case SearchStatus::time_budget: return "time_budget";
    case SearchStatus::witness_budget: return "witness_budget";
  }
  return "unknown";
}

namespace {

using Word = std::uint64_t;
constexpr std::size_t kSearchCarrierLimit = FiniteCarrier::kTableLimit;

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

// Rows t of the table for u: {c : u*c = t} (left) or {c : c*u = t} (right).
class PreimageCache {
 public:
  PreimageCache(const FiniteCarrier& c, bool left)
      : c_(c), left_(left), words_(words_for(c.size())), once_(new std::once_flag[c.size()]), rows_(c.size()) {}

  const Word* get(CarrierIndex u, CarrierIndex t) const {
    std::call_once(once_[u], [&] { build(u); });
    return rows_[u].data() + static_cast<std::size_t>(t) * words_;
  }

 private:
  void build(CarrierIndex u) const {
    const std::size_t n = c_.size();
    auto& rows = rows_[u];
    rows.assign(n * words_, 0);
    for (std::size_t c = 0; c < n; ++c) {
      const auto ci = static_cast<CarrierIndex>(c);
      const CarrierIndex t = left_ ? c_.mul(u, ci) : c_.mul(ci, u);
      rows[t * words_ + c / 64] |= Word{1} << (c % 64);
    }
  }

  const FiniteCarrier& c_;
  bool left_;
  std::size_t words_;
  std::unique_ptr<std::once_flag[]> once_;
  mutable std::vector<std::vector<Word>> rows_;
};

enum class Kind { maps, derivations };

struct State {
  std::vector<std::int32_t> val;
  std::vector<Word> dom;
  std::vector<CarrierIndex> assigned;
};

// Read-only problem data shared by all workers.
struct Problem {
  Kind kind;
  CarrierPtr dc;  // domain
  CarrierPtr cc;  // codomain (== dc for derivations)
  std::size_t n;
  std::size_t size;
  std::size_t words;
  MonomialProgram program;
  std::vector<std::vector<std::pair<CarrierIndex, CarrierIndex>>> factorizations;  // n == 2 only
  PreimageCache left;
  PreimageCache right;

  Problem(Kind k, CarrierPtr d, CarrierPtr c, std::size_t degree)
      : kind(k),
        dc(std::move(d)),
        cc(std::move(c)),
        n(degree),
        size(dc->size()),
        words(words_for(size)),
        program(MonomialTree::canonical(degree)),
        left(k == Kind::maps ? *cc : *dc, true),
        right(k == Kind::maps ? *cc : *dc, false) {
    if (n == 2) {
      factorizations.resize(size);
      for (std::size_t a = 0; a < size; ++a)
        for (std::size_t b = 0; b < size; ++b) {
          const auto ai = static_cast<CarrierIndex>(a), bi = static_cast<CarrierIndex>(b);
          factorizations[dc->mul(ai, bi)].emplace_back(ai, bi);
        }
    }
  }

  State root() const {
    State s;
    s.val.assign(size, -1);
    s.dom.assign(size * words, ~Word{0});
    if (size % 64) {
      const Word last = (Word{1} << (size % 64)) - 1;
      for (std::size_t x = 0; x < size; ++x) s.dom[x * words + words - 1] = last;
    }
    return s;
  }
};

class Control {
 public:
  explicit Control(const SearchBudget& budget) : budget_(budget), start_(std::chrono::steady_clock::now()) {}

  bool stopped() const { return status_.load() != 0; }
  SearchStatus status() const {
    const int s = status_.load();
    return s == 0 ? SearchStatus::exhausted : static_cast<SearchStatus>(s);
  }
  void stop(SearchStatus s) {
    int expected = 0;
    status_.compare_exchange_strong(expected, static_cast<int>(s));
  }
  std::size_t nodes() const { return nodes_.load(); }

  // Counts one node; false once a node or time budget is hit.
  bool count_node() {
    if (stopped()) return false;
    const std::size_t k = nodes_.fetch_add(1) + 1;
    if (budget_.max_nodes && k > *budget_.max_nodes) {
      nodes_.fetch_sub(1);
      stop(SearchStatus::node_budget);
      return false;
    }
    if (budget_.max_seconds && (k & 63) == 0) {
      const auto elapsed = std::chrono::steady_clock::now() - start_;
      if (elapsed >= std::chrono::seconds(*budget_.max_seconds)) {
        stop(SearchStatus::time_budget);
        return false;
      }
    }
    return true;
  }

  // Reserves a witness slot; false when the witness budget is already full.
  bool reserve_witness() {
    if (!budget_.max_witnesses) return true;
    const std::size_t k = witnesses_.fetch_add(1);
    if (k >= *budget_.max_witnesses) {
      stop(SearchStatus::witness_budget);
      return false;
    }
    if (k + 1 == *budget_.max_witnesses) stop(SearchStatus::witness_budget);
    return true;
  }

 private:
  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::atomic<std::size_t> nodes_{0};
  std::atomic<std::size_t> witnesses_{0};
  std::atomic<int> status_{0};
};

class Worker {
 public:
  Worker(const Problem& p, Control& control) : p_(p), control_(control) {}

  std::vector<std::vector<CarrierIndex>> found;

  bool assign(State& s, CarrierIndex x, CarrierIndex v) {
    if (s.val[x] >= 0) return s.val[x] == static_cast<std::int32_t>(v);
    Word* d = &s.dom[x * p_.words];
    if (!(d[v / 64] >> (v % 64) & 1)) return false;
    s.val[x] = static_cast<std::int32_t>(v);
    std::fill(d, d + p_.words, 0);
    d[v / 64] = Word{1} << (v % 64);
    s.assigned.push_back(x);
    queue_.push_back(x);
    if (p_.kind == Kind::maps) {
      for (std::size_t y = 0; y < p_.size; ++y) {
        if (s.val[y] >= 0) continue;
        Word& w = s.dom[y * p_.words + v / 64];
        if (!(w >> (v % 64) & 1)) continue;
        w &= ~(Word{1} << (v % 64));
        const std::size_t left = count(s, y);
        if (left == 0) return false;
        if (left == 1) pending_.push_back(static_cast<CarrierIndex>(y));
      }
    }
    return true;
  }

  bool restrict(State& s, CarrierIndex y, const Word* mask) {
    Word* d = &s.dom[y * p_.words];
    std::size_t left = 0;
    for (std::size_t w = 0; w < p_.words; ++w) {
      d[w] &= mask[w];
      left += static_cast<std::size_t>(std::popcount(d[w]));
    }
    if (left == 0) return false;
    if (left == 1) pending_.push_back(y);
    return true;
  }

  bool propagate(State& s) {
    while (true) {
      while (head_ < queue_.size()) {
        if (!process(s, queue_[head_++])) return reset_buffers(false);
      }
      bool progressed = false;
      for (std::size_t i = 0; i < pending_.size(); ++i) {
        const CarrierIndex y = pending_[i];
        if (s.val[y] >= 0) continue;
        const auto v = lowest(s, y);
        if (!v || !assign(s, y, *v)) return reset_buffers(false);
        progressed = true;
      }
      pending_.clear();
      if (!progressed && head_ == queue_.size()) return reset_buffers(true);
    }
  }

  void dfs(const State& s) {
    if (control_.stopped()) return;
    const auto x = first_unassigned(s);
    if (!x) {
      emit(s);
      return;
    }
    for (CarrierIndex v : values(s, *x)) {
      if (!control_.count_node()) return;
      State child = s;
      if (branch(child, *x, v)) dfs(child);
      if (control_.stopped()) return;
    }
  }

  bool branch(State& s, CarrierIndex x, CarrierIndex v) {
    if (assign(s, x, v) && propagate(s)) return true;
    return reset_buffers(false);
  }

  std::optional<CarrierIndex> first_unassigned(const State& s) const {
    for (std::size_t x = 0; x < p_.size; ++x)
      if (s.val[x] < 0) return static_cast<CarrierIndex>(x);
    return std::nullopt;
  }

  std::vector<CarrierIndex> values(const State& s, CarrierIndex x) const {
    std::vector<CarrierIndex> out;
    const Word* d = &s.dom[x * p_.words];
    for (std::size_t w = 0; w < p_.words; ++w) {
      Word bits = d[w];
      while (bits) {
        out.push_back(static_cast<CarrierIndex>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
        bits &= bits - 1;
      }
    }
    return out;
  }

 private:
  bool reset_buffers(bool result) {
    queue_.clear();
    head_ = 0;
    pending_.clear();
    return result;
  }

  std::size_t count(const State& s, std::size_t y) const {
    std::size_t c = 0;
    for (std::size_t w = 0; w < p_.words; ++w) c += static_cast<std::size_t>(std::popcount(s.dom[y * p_.words + w]));
    return c;
  }

  std::optional<CarrierIndex> lowest(const State& s, CarrierIndex y) const {
    for (std::size_t w = 0; w < p_.words; ++w) {
      const Word bits = s.dom[y * p_.words + w];
      if (bits) return static_cast<CarrierIndex>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
    }
    return std::nullopt;
  }

  // Image of the product xy forced by the images u, w of x, y.
  CarrierIndex forced(CarrierIndex x, CarrierIndex u, CarrierIndex y, CarrierIndex w) const {
    if (p_.kind == Kind::maps) return p_.cc->mul(u, w);
    const FiniteCarrier& a = *p_.dc;
    return a.add(a.mul(u, y), a.mul(x, w));
  }

  // Allowed images c of b, given a with image u and ab with image t.
  const Word* left_mask(CarrierIndex a, CarrierIndex u, CarrierIndex b, CarrierIndex t) const {
    if (p_.kind == Kind::maps) return p_.left.get(u, t);
    return p_.left.get(a, p_.dc->sub(t, p_.dc->mul(u, b)));
  }

  // Allowed images c of a, given b with image u and ab with image t.
  const Word* right_mask(CarrierIndex a, CarrierIndex b, CarrierIndex u, CarrierIndex t) const {
    if (p_.kind == Kind::maps) return p_.right.get(u, t);
    return p_.right.get(b, p_.dc->sub(t, p_.dc->mul(a, u)));
  }

  bool process(State& s, CarrierIndex x) {
    return p_.n == 2 ? process_pairs(s, x) : process_tuples(s, x);
  }

  bool process_pairs(State& s, CarrierIndex x) {
    const FiniteCarrier& a = *p_.dc;
    const auto v = static_cast<CarrierIndex>(s.val[x]);
    for (std::size_t i = 0; i < s.assigned.size(); ++i) {
      const CarrierIndex y = s.assigned[i];
      const auto w = static_cast<CarrierIndex>(s.val[y]);
      if (!assign(s, a.mul(x, y), forced(x, v, y, w))) return false;
      if (!assign(s, a.mul(y, x), forced(y, w, x, v))) return false;
    }
    for (std::size_t yi = 0; yi < p_.size; ++yi) {
      const auto y = static_cast<CarrierIndex>(yi);
      if (s.val[y] >= 0) continue;
      const CarrierIndex xy = a.mul(x, y);
      if (s.val[xy] >= 0 && !restrict(s, y, left_mask(x, v, y, static_cast<CarrierIndex>(s.val[xy])))) return false;
      const CarrierIndex yx = a.mul(y, x);
      if (s.val[yx] >= 0 && !restrict(s, y, right_mask(y, x, v, static_cast<CarrierIndex>(s.val[yx])))) return false;
    }
    for (const auto& [l, r] : p_.factorizations[x]) {
      const bool la = s.val[l] >= 0, ra = s.val[r] >= 0;
      if (la && !ra && !restrict(s, r, left_mask(l, static_cast<CarrierIndex>(s.val[l]), r, v))) return false;
      if (ra && !la && !restrict(s, l, right_mask(l, r, static_cast<CarrierIndex>(s.val[r]), v))) return false;
    }
    return true;
  }

  // Every tuple of assigned elements whose first occurrence of x is at position p.
  bool process_tuples(State& s, CarrierIndex x) {
    const FiniteCarrier& a = *p_.dc;
    const std::vector<CarrierIndex> pool = s.assigned;
    std::vector<CarrierIndex> others;
    for (CarrierIndex y : pool)
      if (y != x) others.push_back(y);
    const std::size_t n = p_.n;
    std::vector<CarrierIndex> t(n), img(n);
    std::vector<std::size_t> idx(n);
    auto amul = [&](CarrierIndex l, CarrierIndex r) { return a.mul(l, r); };
    auto cmul = [&](CarrierIndex l, CarrierIndex r) { return p_.cc->mul(l, r); };
    for (std::size_t p = 0; p < n; ++p) {
      if (p > 0 && others.empty()) break;
      std::fill(idx.begin(), idx.end(), 0);
      while (true) {
        for (std::size_t i = 0; i < n; ++i) t[i] = i < p ? others[idx[i]] : i == p ? x : pool[idx[i]];
        const CarrierIndex r = p_.program.run<CarrierIndex>(std::span<const CarrierIndex>(t), amul);
        CarrierIndex f;
        if (p_.kind == Kind::maps) {
          for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<CarrierIndex>(s.val[t[i]]);
          f = p_.program.run<CarrierIndex>(std::span<const CarrierIndex>(img), cmul);
        } else {
          f = a.encode(a.algebra()->zero());
          img = t;
          for (std::size_t i = 0; i < n; ++i) {
            img[i] = static_cast<CarrierIndex>(s.val[t[i]]);
            f = a.add(f, p_.program.run<CarrierIndex>(std::span<const CarrierIndex>(img), amul));
            img[i] = t[i];
          }
        }
        if (!assign(s, r, f)) return false;
        std::size_t i = n;
        bool done = true;
        while (i > 0) {
          --i;
          if (i == p) continue;
          const std::size_t limit = i < p ? others.size() : pool.size();
          if (++idx[i] < limit) {
            done = false;
            break;
          }
          idx[i] = 0;
        }
        if (done) break;
      }
    }
    return true;
  }

  void emit(const State& s) {
    if (!control_.reserve_witness()) return;
    std::vector<CarrierIndex> images(p_.size);
    for (std::size_t x = 0; x < p_.size; ++x) images[x] = static_cast<CarrierIndex>(s.val[x]);
    found.push_back(std::move(images));
  }

  const Problem& p_;
  Control& control_;
  std::vector<CarrierIndex> queue_;
  std::size_t head_ = 0;
  std::vector<CarrierIndex> pending_;
};

struct RawResult {
  std::vector<std::vector<CarrierIndex>> tables;
  SearchTerminator terminator;
};

RawResult run_search(const Problem& p, const SearchBudget& budget, const SearchOptions& options,
                     const std::function<bool(Worker&, State&)>& seed) {
  Control control(budget);
  RawResult out;
  if (budget.max_witnesses && *budget.max_witnesses == 0) {
    out.terminator.status = SearchStatus::witness_budget;
    return out;
  }
  Worker root_worker(p, control);
  State root = p.root();
  const bool feasible = seed(root_worker, root) && root_worker.propagate(root);

  if (feasible) {
    const auto branch = root_worker.first_unassigned(root);
    if (options.workers <= 1 || !branch) {
      root_worker.dfs(root);
      out.tables = std::move(root_worker.found);
    } else {
      const auto values = root_worker.values(root, *branch);
      std::vector<std::vector<std::vector<CarrierIndex>>> per_branch(values.size());
      std::atomic<std::size_t> next{0};
      auto work = [&] {
        Worker w(p, control);
        for (std::size_t i = next.fetch_add(1); i < values.size(); i = next.fetch_add(1)) {
          if (!control.count_node()) return;
          State child = root;
          if (w.branch(child, *branch, values[i])) w.dfs(child);
          per_branch[i] = std::move(w.found);
          w.found.clear();
        }
      };
      std::vector<std::thread> threads;
      const std::size_t count = std::min(options.workers, values.size());
      for (std::size_t t = 0; t < count; ++t) threads.emplace_back(work);
      for (auto& t : threads) t.join();
      for (auto& b : per_branch)
        for (auto& table : b) out.tables.push_back(std::move(table));
      if (budget.max_witnesses && out.tables.size() > *budget.max_witnesses) out.tables.resize(*budget.max_witnesses);
    }
  }
  out.terminator.status = control.status();
  out.terminator.nodes = control.nodes();
  return out;
}

constexpr std::size_t kUnboundedEvaluations = std::numeric_limits<std::size_t>::max();

void check_search_size(const FiniteCarrier& c) {
  if (c.size() > kSearchCarrierLimit) {
    throw Error(ErrorCode::EnumerationTooLarge, "search supports carriers of at most " +
                                                    std::to_string(kSearchCarrierLimit) + " elements");
  }
}

AuditReport audit(const std::vector<MapTable>& tables, bool exhausted, std::optional<TheoremConditions> hypotheses) {
  AuditReport r;
  r.witnesses_found = tables.size();
  r.exhausted = exhausted;
  r.hypothesis_record = std::move(hypotheses);
  for (const auto& t : tables) {
    if (!is_additive(t)) r.nonadditive_witnesses.push_back(t);
  }
  r.all_additive = r.nonadditive_witnesses.empty();
  return r;
}

}  // namespace

MapStream enumerate_multiplicative_bijections(const AlgebraPtr& a, const AlgebraPtr& b, std::size_t n,
                                              const SearchBudget& budget, const SearchOptions& options) {
  if (n < 2) throw Error(ErrorCode::ArityMismatch, "n must be at least 2");
  if (a->field() != b->field()) throw Error(ErrorCode::FieldMismatch, "algebras over different fields");
  auto dc = make_carrier(a);
  auto cc = a->same_structure(*b) && a->basis_names() == b->basis_names() ? dc : make_carrier(b);
  if (dc->size() != cc->size()) {
    throw Error(ErrorCode::CarrierSizeMismatch, "carriers of size " + std::to_string(dc->size()) + " and " +
                                                    std::to_string(cc->size()) + " admit no bijection");
  }
  check_search_size(*dc);
  const Problem p(Kind::maps, dc, cc, n);
  RawResult raw = run_search(p, budget, options, [](Worker&, State&) { return true; });

  MapStream stream;
  stream.terminator = raw.terminator;
  for (auto& images : raw.tables) {
    MapTable m = MapTable::from_table(dc, cc, std::move(images));
    if (!is_bijective(m) || !is_n_multiplicative(m, n, TreeMode::canonical, kUnboundedEvaluations)) {
      throw std::logic_error("search produced a table that fails verification");
    }
    stream.items.push_back(std::move(m));
  }
  return stream;
}

DerivationStream enumerate_n_derivations(const AlgebraPtr& a, std::size_t n, const SearchBudget& budget,
                                         const std::optional<PeirceDecomposition>& seed,
                                         const SearchOptions& options) {
  if (n < 2) throw Error(ErrorCode::ArityMismatch, "n must be at least 2");
  auto c = make_carrier(a);
  check_search_size(*c);
  std::vector<Word> half_mask;
  CarrierIndex e = 0;
  if (seed) {
    require_same_algebra(*a, *seed->algebra());
    e = c->encode(seed->idempotent());
    std::vector<Vector> basis;
    for (const auto& v : seed->basis(Component::half)) basis.push_back(v.coords());
    half_mask.assign(words_for(c->size()), 0);
    for (CarrierIndex x : c->span_elements(basis)) half_mask[x / 64] |= Word{1} << (x % 64);
  }
  const Problem p(Kind::derivations, c, c, n);
  const CarrierIndex zero = c->encode(a->zero());
  RawResult raw = run_search(p, budget, options, [&](Worker& w, State& s) {
    if (!seed) return true;
    return w.assign(s, zero, zero) && w.restrict(s, e, half_mask.data());
  });

  DerivationStream stream;
  stream.terminator = raw.terminator;
  for (auto& images : raw.tables) {
    DerivationTable d = DerivationTable::from_table(c, std::move(images));
    if (!is_n_derivation(d, n, TreeMode::canonical, kUnboundedEvaluations)) {
      throw std::logic_error("search produced a table that fails verification");
    }
    stream.items.push_back(std::move(d));
  }
  return stream;
}

AuditReport additivity_audit(const MapStream& stream, std::optional<TheoremConditions> hypotheses) {
  return audit(stream.items, stream.terminator.exhausted(), std::move(hypotheses));
}

AuditReport additivity_audit(const DerivationStream& stream, std::optional<TheoremConditions> hypotheses) {
  std::vector<MapTable> tables;
  for (const auto& d : stream.items) tables.push_back(d.map());
  return audit(tables, stream.terminator.exhausted(), std::move(hypotheses));
}

AuditReport additivity_audit(const MapStream& stream, const PeirceDecomposition& hypotheses) {
  return additivity_audit(stream, check_theorem_conditions(hypotheses));
}

AuditReport additivity_audit(const DerivationStream& stream, const PeirceDecomposition& hypotheses) {
  return additivity_audit(stream, check_theorem_conditions(hypotheses));
}

}  // namespace jordan
