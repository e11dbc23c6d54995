#include "hornred/canonical.hpp"

#include <algorithm>
#include <unordered_map>

namespace hornred {

namespace {

// Clause with variables renumbered densely (0..n-1) in first-occurrence order.
struct DenseClause {
  struct DAtom {
    int pred;
    int arity;
    std::vector<int> args;
    bool operator==(const DAtom&) const = default;
  };
  bool has_head = false;
  DAtom head;
  std::vector<DAtom> body;
  std::vector<PredVar> preds;   // dense index -> original
  std::vector<TermVar> terms;   // dense index -> original
  std::vector<int> pred_uses;   // occurrences per predicate
};

DenseClause densify(const Clause& c) {
  DenseClause d;
  std::unordered_map<int, int> pmap, tmap;
  auto conv = [&](const Atom& a) {
    DenseClause::DAtom out;
    auto [pit, pnew] = pmap.try_emplace(a.pred.id, static_cast<int>(d.preds.size()));
    if (pnew) {
      d.preds.push_back(a.pred);
      d.pred_uses.push_back(0);
    }
    out.pred = pit->second;
    ++d.pred_uses[out.pred];
    out.arity = a.arity();
    out.args.reserve(a.args.size());
    for (TermVar t : a.args) {
      auto [tit, tnew] = tmap.try_emplace(t.id, static_cast<int>(d.terms.size()));
      if (tnew) d.terms.push_back(t);
      out.args.push_back(tit->second);
    }
    return out;
  };
  if (c.head) {
    d.has_head = true;
    d.head = conv(*c.head);
  }
  d.body.reserve(c.body.size());
  for (const Atom& a : c.body) d.body.push_back(conv(a));
  return d;
}

class Canonicalizer {
 public:
  explicit Canonicalizer(const DenseClause& d)
      : d_(d),
        pred_num_(d.preds.size(), -1),
        term_num_(d.terms.size(), -1),
        used_(d.body.size(), false) {}

  void run() {
    key_.push_back(d_.has_head ? 1 : 0);
    if (d_.has_head) commit(d_.head, trail_scratch_);
    order_.clear();
    search();
  }

  const CanonicalKey& best_key() const { return best_; }
  const std::vector<int>& best_order() const { return best_order_; }

 private:
  struct Trail {
    std::vector<int> preds;
    std::vector<int> terms;
  };

  void token(const DenseClause::DAtom& a, std::vector<int>& out) const {
    out.clear();
    out.push_back(a.arity);
    int next_p = next_pred_;
    out.push_back(pred_num_[a.pred] >= 0 ? pred_num_[a.pred] : next_p++);
    // New term variables inside one atom are numbered left to right.
    int next_t = next_term_;
    std::size_t first_new = out.size();
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      int v = a.args[i];
      if (term_num_[v] >= 0) {
        out.push_back(term_num_[v]);
        continue;
      }
      int assigned = -1;
      for (std::size_t j = 0; j < i; ++j)
        if (a.args[j] == v) assigned = out[first_new + j];
      out.push_back(assigned >= 0 ? assigned : next_t++);
    }
  }

  void commit(const DenseClause::DAtom& a, Trail& trail) {
    std::vector<int> tok;
    token(a, tok);
    if (pred_num_[a.pred] < 0) {
      pred_num_[a.pred] = next_pred_++;
      trail.preds.push_back(a.pred);
    }
    for (int v : a.args) {
      if (term_num_[v] < 0) {
        term_num_[v] = next_term_++;
        trail.terms.push_back(v);
      }
    }
    key_.insert(key_.end(), tok.begin(), tok.end());
  }

  void undo(const Trail& trail, std::size_t key_len) {
    for (int p : trail.preds) pred_num_[p] = -1;
    for (int t : trail.terms) term_num_[t] = -1;
    next_pred_ -= static_cast<int>(trail.preds.size());
    next_term_ -= static_cast<int>(trail.terms.size());
    key_.resize(key_len);
  }

  bool interchangeable(const DenseClause::DAtom& a, const DenseClause::DAtom& b) const {
    if (a == b) return true;
    return a.arity == b.arity && a.args == b.args && pred_num_[a.pred] < 0 &&
           pred_num_[b.pred] < 0 && d_.pred_uses[a.pred] == 1 && d_.pred_uses[b.pred] == 1;
  }

  // True when the current prefix followed by `tok` already exceeds the best
  // key; every completion of such a branch loses.
  bool prefix_worse(const std::vector<int>& tok) const {
    if (!have_best_) return false;
    std::size_t n = key_.size();
    for (std::size_t i = 0; i < n + tok.size(); ++i) {
      int v = i < n ? key_[i] : tok[i - n];
      if (i >= best_.size()) return true;
      if (v != best_[i]) return v > best_[i];
    }
    return false;
  }

  void search() {
    if (order_.size() == d_.body.size()) {
      if (!have_best_ || key_ < best_) {
        best_ = key_;
        best_order_ = order_;
        have_best_ = true;
      }
      return;
    }
    std::vector<int> candidates;
    std::vector<int> min_tok, tok;
    for (std::size_t i = 0; i < d_.body.size(); ++i) {
      if (used_[i]) continue;
      token(d_.body[i], tok);
      if (!candidates.empty() && tok > min_tok) continue;
      if (candidates.empty() || tok < min_tok) {
        candidates.clear();
        min_tok = tok;
      } else {
        bool dup = false;
        for (int j : candidates) dup = dup || interchangeable(d_.body[j], d_.body[i]);
        if (dup) continue;
      }
      candidates.push_back(static_cast<int>(i));
    }
    for (int i : candidates) {
      if (prefix_worse(min_tok)) return;
      Trail trail;
      std::size_t key_len = key_.size();
      used_[i] = true;
      order_.push_back(i);
      commit(d_.body[i], trail);
      search();
      order_.pop_back();
      used_[i] = false;
      undo(trail, key_len);
    }
  }

  const DenseClause& d_;
  std::vector<int> pred_num_;
  std::vector<int> term_num_;
  std::vector<bool> used_;
  int next_pred_ = 0;
  int next_term_ = 1;
  CanonicalKey key_;
  std::vector<int> order_;
  Trail trail_scratch_;
  CanonicalKey best_;
  std::vector<int> best_order_;
  bool have_best_ = false;
};

}  // namespace

CanonicalKey canonical_key(const Clause& c) {
  DenseClause d = densify(c);
  Canonicalizer canon(d);
  canon.run();
  return canon.best_key();
}

CanonicalForm canonical_form(const Clause& c) {
  DenseClause d = densify(c);
  Canonicalizer canon(d);
  canon.run();

  CanonicalForm out;
  out.key = canon.best_key();
  std::vector<int> pred_num(d.preds.size(), -1), term_num(d.terms.size(), -1);
  int next_pred = 0, next_term = 1;
  auto rename = [&](const DenseClause::DAtom& a) {
    if (pred_num[a.pred] < 0) pred_num[a.pred] = next_pred++;
    Atom atom{PredVar{pred_num[a.pred], a.arity}, {}};
    for (int v : a.args) {
      if (term_num[v] < 0) term_num[v] = next_term++;
      atom.args.push_back(TermVar{term_num[v]});
    }
    return atom;
  };
  if (d.has_head) out.clause.head = rename(d.head);
  for (int i : canon.best_order()) out.clause.body.push_back(rename(d.body[i]));
  for (std::size_t i = 0; i < d.preds.size(); ++i)
    out.renaming.bind(d.preds[i], PredVar{pred_num[i], d.preds[i].arity});
  for (std::size_t i = 0; i < d.terms.size(); ++i)
    out.renaming.bind(d.terms[i], TermVar{term_num[i]});
  return out;
}

bool alpha_equivalent(const Clause& a, const Clause& b) {
  if (a.body.size() != b.body.size() || a.head.has_value() != b.head.has_value()) return false;
  return canonical_key(a) == canonical_key(b);
}

bool canonical_less(const Clause& a, const Clause& b) {
  if (a.body.size() != b.body.size()) return a.body.size() < b.body.size();
  auto pa = body_arity_profile(a), pb = body_arity_profile(b);
  if (pa != pb) return pa < pb;
  return canonical_key(a) < canonical_key(b);
}

std::size_t KeyHash::operator()(const CanonicalKey& k) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (int v : k) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

class InstanceMatcher {
 public:
  InstanceMatcher(const Clause& specific, const Clause& general)
      : spec_(specific), gen_(densify(general)) {
    pred_to_.assign(gen_.preds.size(), -1);
    term_to_.assign(gen_.terms.size(), -1);
    used_.assign(spec_.body.size(), false);
    order_ = match_order();
  }

  std::optional<Substitution> run() {
    if (gen_.has_head != spec_.head.has_value()) return std::nullopt;
    if (gen_.body.size() != spec_.body.size()) return std::nullopt;
    std::vector<int> trail_p, trail_t;
    if (gen_.has_head && !bind(gen_.head, *spec_.head, trail_p, trail_t)) return std::nullopt;
    if (!search(0)) return std::nullopt;
    Substitution s;
    for (std::size_t i = 0; i < gen_.preds.size(); ++i)
      s.bind(gen_.preds[i], PredVar{pred_to_[i], gen_.preds[i].arity});
    for (std::size_t i = 0; i < gen_.terms.size(); ++i)
      s.bind(gen_.terms[i], TermVar{term_to_[i]});
    return s;
  }

 private:
  // Most-connected-first: each next atom shares as many variables as
  // possible with what is already placed.
  std::vector<int> match_order() const {
    std::vector<int> order;
    std::vector<bool> seen_var(gen_.terms.size(), false), placed(gen_.body.size(), false);
    if (gen_.has_head)
      for (int v : gen_.head.args) seen_var[v] = true;
    for (std::size_t step = 0; step < gen_.body.size(); ++step) {
      int best = -1, best_score = -1;
      for (std::size_t i = 0; i < gen_.body.size(); ++i) {
        if (placed[i]) continue;
        int score = 0;
        for (int v : gen_.body[i].args) score += seen_var[v] ? 1 : 0;
        if (score > best_score) {
          best_score = score;
          best = static_cast<int>(i);
        }
      }
      placed[best] = true;
      order.push_back(best);
      for (int v : gen_.body[best].args) seen_var[v] = true;
    }
    return order;
  }

  bool bind(const DenseClause::DAtom& g, const Atom& s, std::vector<int>& trail_p,
            std::vector<int>& trail_t) {
    if (g.arity != s.arity()) return false;
    if (pred_to_[g.pred] < 0) {
      pred_to_[g.pred] = s.pred.id;
      trail_p.push_back(g.pred);
    } else if (pred_to_[g.pred] != s.pred.id) {
      return false;
    }
    for (std::size_t i = 0; i < g.args.size(); ++i) {
      int v = g.args[i];
      if (term_to_[v] < 0) {
        term_to_[v] = s.args[i].id;
        trail_t.push_back(v);
      } else if (term_to_[v] != s.args[i].id) {
        return false;
      }
    }
    return true;
  }

  void unbind(const std::vector<int>& trail_p, const std::vector<int>& trail_t) {
    for (int p : trail_p) pred_to_[p] = -1;
    for (int t : trail_t) term_to_[t] = -1;
  }

  bool search(std::size_t depth) {
    if (depth == order_.size()) return true;
    const auto& g = gen_.body[order_[depth]];
    for (std::size_t j = 0; j < spec_.body.size(); ++j) {
      if (used_[j] || spec_.body[j].arity() != g.arity) continue;
      bool repeat = false;
      for (std::size_t k = 0; k < j && !repeat; ++k)
        repeat = !used_[k] && spec_.body[k] == spec_.body[j];
      if (repeat) continue;
      std::vector<int> trail_p, trail_t;
      if (bind(g, spec_.body[j], trail_p, trail_t)) {
        used_[j] = true;
        if (search(depth + 1)) return true;
        used_[j] = false;
      }
      unbind(trail_p, trail_t);
    }
    return false;
  }

  const Clause& spec_;
  DenseClause gen_;
  std::vector<int> pred_to_, term_to_;
  std::vector<bool> used_;
  std::vector<int> order_;
};

}  // namespace

std::optional<Substitution> is_instance(const Clause& specific, const Clause& general) {
  if (specific.body.size() != general.body.size()) return std::nullopt;
  return InstanceMatcher(specific, general).run();
}

bool equal_modulo_body_order(const Clause& a, const Clause& b) {
  if (a.head != b.head || a.body.size() != b.body.size()) return false;
  auto ba = a.body, bb = b.body;
  std::sort(ba.begin(), ba.end());
  std::sort(bb.begin(), bb.end());
  return ba == bb;
}

Theory::Theory(const std::vector<Clause>& clauses) {
  for (const Clause& c : clauses) insert(c);
}

bool Theory::insert(const Clause& c) {
  auto [it, fresh] = index_.try_emplace(canonical_key(c), clauses_.size());
  if (!fresh) return false;
  clauses_.push_back(c);
  return true;
}

bool Theory::contains(const Clause& c) const { return find(c).has_value(); }

std::optional<std::size_t> Theory::find(const Clause& c) const {
  auto it = index_.find(canonical_key(c));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Theory::erase(const Clause& c) {
  auto pos = find(c);
  if (!pos) return false;
  clauses_.erase(clauses_.begin() + static_cast<std::ptrdiff_t>(*pos));
  reindex();
  return true;
}

void Theory::reindex() {
  index_.clear();
  for (std::size_t i = 0; i < clauses_.size(); ++i) index_.emplace(canonical_key(clauses_[i]), i);
}

}  // namespace hornred
