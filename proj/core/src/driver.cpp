#include "desing/driver.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "desing/delta.hpp"
#include "desing/errors.hpp"
#include "desing/groebner.hpp"

namespace desing {

namespace {

// Epoch bookkeeping of one recursion level. s0 is the stage where the current
// max w-ord started, k0 the stage where the current max t started.
struct Epoch {
  bool active = false;
  Rational last_word;
  std::optional<TValue> last_t;
  int s0 = 0;
  int k0 = 0;
};

struct Change {
  int chart;
  std::size_t var;
  Polynomial shift;
  std::size_t level;
};

struct Plan {
  InvariantVector max;
  std::optional<TValue> top_t;
  std::map<int, std::vector<std::size_t>> centers;
  std::map<int, Polynomial> divisorial;
  std::map<int, InvariantVector> local;
  std::map<int, std::vector<DescentStep>> descent;
  std::vector<Epoch> epochs;
  std::vector<Change> changes;
};

struct ChartState {
  Ideal J;
  std::vector<std::pair<Polynomial, unsigned>> factors;
};

// h = c * x_v.
std::optional<std::size_t> coordinate_of(const Polynomial& h) {
  if (h.terms().size() != 1 || h.total_degree() != 1) return std::nullopt;
  const auto& m = h.leading_term().exponents;
  for (std::size_t v = 0; v < m.size(); ++v)
    if (m[v]) return v;
  return std::nullopt;
}

Polynomial strip_power(const Polynomial& f, std::size_t var) {
  Exponent e = f.min_degree_in(var);
  if (e == 0) return f;
  Monomial m(f.nvars(), 0);
  m[var] = e;
  return div_monomial(f, m);
}

std::set<DivisorLabel> labels_of(const Chart& c) {
  std::set<DivisorLabel> out;
  for (const auto& [v, l] : c.exceptional) out.insert(l);
  return out;
}

Polynomial determinant(std::vector<std::vector<Polynomial>> m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Polynomial det(m[0][0].ring());
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Polynomial> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    Polynomial term = m[0][j] * determinant(std::move(minor));
    if (j % 2) det -= term;
    else det += term;
  }
  return det;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == k) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i + (k - depth) <= n; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

class BudgetScope {
 public:
  explicit BudgetScope(std::size_t budget) : saved_(default_reduction_budget()) {
    if (budget) set_default_reduction_budget(budget);
  }
  ~BudgetScope() { set_default_reduction_budget(saved_); }

 private:
  std::size_t saved_;
};

class Runner {
 public:
  Runner(const Ideal& J, unsigned b, const std::vector<std::size_t>& initial, const DriverOptions& opt)
      : opt_(opt),
        trace_{J, b, initial, ChartTree(J.ring(), initial), {}, {}, "", "", "", {}, std::nullopt},
        n_(J.ring()->size()),
        epochs_(n_) {
    if (J.is_zero()) throw std::invalid_argument("cannot resolve the zero ideal");
    if (b == 0) throw std::invalid_argument("bound must be positive");
    states_.emplace(0, ChartState{J, {}});
    if (opt_.track_desing) codim_ = opt_.codim ? *opt_.codim : n_ - static_cast<std::size_t>(std::max(0, J.dimension()));
  }

  ResolutionTrace run() {
    BudgetScope scope(opt_.gb_budget);
    try {
      loop();
      trace_.status = "resolved";
    } catch (const CenterNotCoordinate& e) {
      abort("CenterNotCoordinate", e.what());
    } catch (const FactorialBlowup& e) {
      abort("FactorialBlowup", e.what());
    } catch (const ResourceLimit& e) {
      abort("ResourceLimit", e.what());
    } catch (const ZeroCoefficientIdeal& e) {
      abort("ZeroCoefficientIdeal", e.what());
    } catch (const NoMaximalContact& e) {
      abort("NoMaximalContact", e.what());
    } catch (const InexactDivision& e) {
      abort("InexactDivision", e.what());
    } catch (const InvariantViolation& e) {
      abort("InvariantViolation", e.what());
    }
    return std::move(trace_);
  }

 private:
  void abort(const std::string& type, const std::string& what) {
    trace_.status = "aborted";
    trace_.error_type = type;
    trace_.error = "stage " + std::to_string(stage_) + ": " + what;
  }

  ChartTree& tree() { return trace_.tree; }
  unsigned bound() const { return trace_.bound; }

  bool sing_empty(int chart) const {
    return desing::sing_is_empty({states_.at(chart).J, bound()});
  }

  void loop() {
    std::optional<InvariantVector> previous;
    for (stage_ = 0;; ++stage_) {
      changes_.clear();
      Plan plan = plan_with_changes();
      if (plan.centers.empty() && plan.divisorial.empty()) {
        record_nodes(plan);
        trace_.stages.push_back({stage_, {}, std::nullopt, "done"});
        if (opt_.certify) certify();
        return;
      }
      if (static_cast<std::size_t>(stage_) >= opt_.max_blowups)
        throw ResourceLimit("blow-up budget of " + std::to_string(opt_.max_blowups) + " exhausted");
      if (previous && !(plan.max < *previous))
        throw InvariantViolation("max invariant did not drop: " + to_string(*previous) + " then " +
                                 to_string(plan.max));
      previous = plan.max;
      record_nodes(plan);
      trace_.stages.push_back(
          {stage_, plan.max, plan.top_t, plan.centers.empty() ? "divisorial" : "blowup"});
      if (opt_.track_desing && !trace_.desing && plan.max == InvariantVector::smooth(codim_, n_))
        record_desing();
      execute(plan);
      epochs_ = plan.epochs;
    }
  }

  Plan plan_with_changes() {
    for (int attempt = 0;; ++attempt) {
      Plan p = plan();
      if (p.changes.empty()) return p;
      if (attempt >= 16) throw ResourceLimit("coordinate changes did not settle");
      for (const auto& ch : p.changes) apply_change(ch);
    }
  }

  void apply_change(const Change& ch) {
    int id = tree().change_coordinates(ch.chart, ch.var, ch.shift, stage_);
    if (id == ch.chart) return;
    const Chart& c = tree().chart(id);
    ChartState st{controlled_transform(states_.at(ch.chart).J, bound(), c), {}};
    for (const auto& [h, e] : states_.at(ch.chart).factors) st.factors.emplace_back(c.from_parent.apply(h), e);
    states_.emplace(id, std::move(st));
    auto prev = changes_[ch.chart];
    prev.emplace_back(ch.var, c.from_parent.images[ch.var]);
    changes_[id] = prev;
    for (std::size_t i = 0; i < n_; ++i) {
      auto it = preferred_.find({ch.chart, i});
      if (it != preferred_.end()) preferred_[{id, i}] = it->second;
    }
    preferred_[{id, ch.level}] = ch.var;
  }

  struct Ctx {
    Ideal J;
    unsigned b;
    std::set<DivisorLabel> E;
    std::set<std::size_t> removed;
    std::vector<DescentStep> chain;
  };

  static InvariantVector local_vector(const std::vector<InvariantEntry>& prefix, const InvariantEntry& e,
                                      std::size_t len) {
    InvariantVector v{prefix};
    v.entries.push_back(e);
    while (v.entries.size() < len) v.entries.push_back(InvariantEntry::pending());
    return v;
  }

  Plan plan() {
    Plan p;
    p.epochs = epochs_;
    const std::size_t len = n_ + 1;
    std::map<int, Ctx> part;
    for (int c : tree().frontier()) {
      if (sing_empty(c)) {
        p.local[c] = {};
        continue;
      }
      part.emplace(c, Ctx{states_.at(c).J, bound(), labels_of(tree().chart(c)), {}, {}});
    }
    if (part.empty()) return p;

    std::vector<InvariantEntry> prefix;
    auto finish = [&](std::vector<InvariantEntry> entries) {
      while (entries.size() < len) entries.push_back(InvariantEntry::infinity());
      p.max = InvariantVector{std::move(entries)};
    };
    auto clear_inner = [&](std::size_t i) {
      for (std::size_t j = i + 1; j < p.epochs.size(); ++j) p.epochs[j] = Epoch{};
    };

    for (std::size_t i = 0; i < n_; ++i) {
      Epoch& ep = p.epochs[i];
      std::map<int, BasicObjectState> st;
      std::map<int, MaxWord> mw;
      std::optional<Rational> W;
      for (auto& [c, ctx] : part) {
        auto s = BasicObjectState::make(tree().chart(c), ctx.J, ctx.b, ctx.E);
        MaxWord w = max_word(s);
        if (!W || w.value > *W) W = w.value;
        st.emplace(c, std::move(s));
        mw.emplace(c, std::move(w));
      }
      if (!ep.active) {
        ep = Epoch{true, *W, std::nullopt, stage_, stage_};
      } else if (*W > ep.last_word) {
        throw InvariantViolation("max w-ord increased at level " + std::to_string(n_ - i));
      } else if (*W < ep.last_word) {
        ep.s0 = ep.k0 = stage_;
        ep.last_t.reset();
      }
      ep.last_word = *W;

      if (*W == 0) {
        std::map<int, MaxH> mh;
        std::optional<GammaValue> G;
        for (auto& [c, s] : st) {
          std::vector<DivisorLabel> labels;
          for (const auto& [l, v] : s.divisors) labels.push_back(l);
          auto h = max_h(s.exponents, s.bound, labels);
          if (!h) throw InvariantViolation("monomial object with no singular divisor intersection");
          if (!G || h->value > *G) G = h->value;
          mh.emplace(c, *h);
        }
        auto entries = prefix;
        entries.push_back(InvariantEntry::of(*G));
        finish(entries);
        for (auto& [c, h] : mh) {
          if (h.value == *G) {
            std::vector<std::size_t> vars(part.at(c).removed.begin(), part.at(c).removed.end());
            for (auto l : h.center) vars.push_back(*tree().chart(c).var_of(l));
            std::sort(vars.begin(), vars.end());
            p.centers[c] = vars;
            p.descent[c] = part.at(c).chain;
          } else {
            p.local[c] = local_vector(prefix, InvariantEntry::of(h.value), len);
          }
        }
        if (i == 0) p.top_t.reset();
        clear_inner(i);
        return p;
      }

      std::set<DivisorLabel> minus;
      for (DivisorLabel l = 1; l < tree().next_label(); ++l)
        if (tree().label_stage(l) <= ep.s0) minus.insert(l);
      std::map<int, MaxT> mt;
      std::optional<TValue> T;
      for (auto& [c, s] : st) {
        const bool at_max = mw.at(c).value == *W;
        MaxT m = max_t(s, at_max ? minus : part.at(c).E, mw.at(c));
        if (at_max && (!T || m.value > *T)) T = m.value;
        mt.emplace(c, std::move(m));
      }
      if (ep.last_t && *T > *ep.last_t)
        throw InvariantViolation("max t increased at level " + std::to_string(n_ - i));
      if (!ep.last_t || *T < *ep.last_t) ep.k0 = stage_;
      ep.last_t = *T;
      if (ep.k0 == stage_) clear_inner(i);
      if (i == 0) p.top_t = *T;

      std::vector<int> kept;
      for (auto& [c, m] : mt) {
        if (mw.at(c).value == *W && m.value == *T) kept.push_back(c);
        else p.local[c] = local_vector(prefix, InvariantEntry::of(m.value), len);
      }
      prefix.push_back(InvariantEntry::of(*T));

      std::map<int, Couple> comp;
      std::map<int, Polynomial> h;
      for (int c : kept) {
        Companion cmp = companion_object(st.at(c), mt.at(c));
        if (cmp.monomial || !cmp.couple) throw InvariantViolation("monomial companion with positive w-ord");
        if (auto hc = codim_one_part(*cmp.couple)) h.emplace(c, *hc);
        comp.emplace(c, *cmp.couple);
      }

      if (!h.empty()) {
        finish(prefix);
        // One global hypersurface: label it in every chart or in none.
        bool label_top = true;
        if (i == 0)
          for (auto& [c, hc] : h) label_top = label_top && coordinate_of(hc).has_value();
        for (int c : kept) {
          if (!h.count(c)) {
            p.local[c] = local_vector(std::vector<InvariantEntry>(prefix.begin(), prefix.end() - 1),
                                      InvariantEntry::of(*T), len);
            continue;
          }
          const Polynomial& hc = h.at(c);
          const Chart& chart = tree().chart(c);
          if (auto v = coordinate_of(hc); v && (i > 0 || label_top)) {
            std::vector<std::size_t> vars(part.at(c).removed.begin(), part.at(c).removed.end());
            vars.push_back(*v);
            std::sort(vars.begin(), vars.end());
            p.centers[c] = vars;
            p.descent[c] = part.at(c).chain;
          } else if (i == 0) {
            p.divisorial.emplace(c, hc);
          } else {
            bool changed = false;
            for (std::size_t v = 0; v < n_ && !changed; ++v) {
              if (chart.is_exceptional(v) || part.at(c).removed.count(v) || hc.degree_in(v) != 1) continue;
              auto co = coefficients_in(hc, v);
              if (!co[1].is_constant()) continue;
              p.changes.push_back({c, v, co[0] * (1 / co[1].constant_term()), i});
              changed = true;
            }
            if (!changed)
              throw CenterNotCoordinate("chart " + std::to_string(c) + ": codimension-one center V(" +
                                        to_string(hc) + ") at level " + std::to_string(n_ - i) +
                                        " is not a coordinate hypersurface");
          }
        }
        clear_inner(i);
        return p;
      }

      std::map<int, Ctx> next;
      for (int c : kept) {
        const Chart& chart = tree().chart(c);
        const Ctx& ctx = part.at(c);
        std::set<DivisorLabel> inner;
        for (auto l : ctx.E)
          if (tree().label_stage(l) > ep.k0) inner.insert(l);
        ContactSearch search{ctx.removed, inner, std::nullopt};
        if (auto it = preferred_.find({c, i}); it != preferred_.end()) search.preferred = it->second;
        MaximalContact mc = [&] {
          try {
            return find_maximal_contact(comp.at(c), chart, search);
          } catch (const NoMaximalContact& e) {
            throw CenterNotCoordinate("chart " + std::to_string(c) + ", level " + std::to_string(n_ - i) +
                                      ": " + e.what() + "; Max t ideal " + to_string(comp.at(c).ideal));
          }
        }();
        if (mc.shift) {
          p.changes.push_back({c, mc.var, *mc.shift, i});
          continue;
        }
        preferred_[{c, i}] = mc.var;
        CoefficientIdeal co = coefficient_ideal(comp.at(c), mc.var, opt_.bound_cap);
        std::set<std::size_t> removed = ctx.removed;
        removed.insert(mc.var);
        if (removed.size() >= n_) throw InvariantViolation("descent ran out of variables");
        std::set<DivisorLabel> E;
        for (auto l : inner) {
          auto v = chart.var_of(l);
          if (v && !removed.count(*v)) E.insert(l);
        }
        auto chain = ctx.chain;
        chain.push_back({n_ - i, mc.var, co.ideal, co.bound});
        next.emplace(c, Ctx{co.ideal, co.bound, E, removed, std::move(chain)});
      }
      if (!p.changes.empty()) return p;
      part = std::move(next);
    }
    throw InvariantViolation("descent did not terminate in a codimension-one or monomial step");
  }

  void record_nodes(const Plan& p) {
    for (int c : tree().frontier()) {
      const Chart& chart = tree().chart(c);
      const ChartState& s = states_.at(c);
      ResolutionNode node{c, stage_, s.J, bound(), exceptional_exponents(s.J, chart).exponents,
                          exceptional_exponents(total_transform(trace_.input, tree(), c), chart).exponents, {},
                          std::nullopt};
      const bool meets = p.centers.count(c) || p.divisorial.count(c);
      if (meets) {
        node.invariant = p.max;
        CenterRecord rec;
        if (auto it = p.centers.find(c); it != p.centers.end()) rec.vars = it->second;
        if (auto it = p.divisorial.find(c); it != p.divisorial.end()) rec.divisorial = it->second;
        if (auto it = changes_.find(c); it != changes_.end()) rec.change = it->second;
        if (auto it = p.descent.find(c); it != p.descent.end()) rec.descent = it->second;
        node.center = rec;
      } else if (auto it = p.local.find(c); it != p.local.end()) {
        node.invariant = it->second;
      }
      trace_.nodes.push_back(std::move(node));
    }
  }

  void record_desing() {
    DesingRecord d;
    d.stage = stage_;
    d.smooth = true;
    d.transversal = true;
    for (int c : tree().frontier()) {
      Ideal S = strict_transform(trace_.input, tree(), c);
      if (!is_smooth(S, codim_)) d.smooth = false;
      const Chart& chart = tree().chart(c);
      std::vector<std::size_t> exc;
      for (const auto& [v, l] : chart.exceptional) exc.push_back(v);
      for (std::size_t k = 1; k <= exc.size(); ++k)
        for_each_subset(exc.size(), k, [&](const std::vector<std::size_t>& idx) {
          std::vector<Polynomial> xs;
          for (auto i : idx) xs.push_back(Polynomial::variable(chart.ring, exc[i]));
          Ideal ST = S + Ideal(chart.ring, xs);
          if (!ST.is_trivial() && !is_smooth(ST, codim_ + k)) d.transversal = false;
        });
      d.strict.emplace(c, std::move(S));
    }
    trace_.desing = std::move(d);
  }

  void certify() {
    for (int c : tree().frontier()) {
      const Chart& chart = tree().chart(c);
      Ideal total = total_transform(trace_.input, tree(), c);
      PrincipalCertificate cert;
      auto split = exceptional_exponents(total, chart);
      cert.exponents = split.exponents;
      cert.factors = states_.at(c).factors;
      Polynomial prod(chart.ring, 1);
      for (const auto& [h, e] : cert.factors) prod *= h.pow(e);
      std::vector<Polynomial> rest;
      bool exact = true;
      for (const auto& g : split.reduced.generators()) {
        auto q = divide_exact(g, prod);
        if (!q) {
          exact = false;
          break;
        }
        rest.push_back(std::move(*q));
      }
      cert.verified = exact && Ideal(chart.ring, rest).is_trivial();
      trace_.principal.emplace(c, std::move(cert));
    }
  }

  void execute(const Plan& p) {
    for (const auto& [c, h] : p.divisorial) {
      ChartState& s = states_.at(c);
      auto state = BasicObjectState::make(tree().chart(c), s.J, bound());
      s.J = divisorial_blowdown(state, tree().chart(c), h).ideal;
      s.factors.emplace_back(h, bound());
    }
    if (p.centers.empty()) return;
    const DivisorLabel label = tree().new_label(stage_ + 1);
    for (const auto& [c, vars] : p.centers) {
      const ChartState parent = states_.at(c);
      for (int kid : tree().blowup(c, vars, stage_ + 1, label)) {
        const Chart& ch = tree().chart(kid);
        ChartState st{controlled_transform(parent.J, bound(), ch), {}};
        for (const auto& [h, e] : parent.factors) {
          Polynomial t = strip_power(ch.from_parent.apply(h), ch.pivot);
          if (!t.is_constant()) st.factors.emplace_back(t, e);
        }
        states_.emplace(kid, std::move(st));
      }
    }
  }

  DriverOptions opt_;
  ResolutionTrace trace_;
  std::size_t n_;
  std::size_t codim_ = 0;
  int stage_ = 0;
  std::vector<Epoch> epochs_;
  std::map<int, ChartState> states_;
  std::map<std::pair<int, std::size_t>, std::size_t> preferred_;
  std::map<int, std::vector<std::pair<std::size_t, Polynomial>>> changes_;
};

}  // namespace

std::size_t ResolutionTrace::blowups() const {
  std::size_t n = 0;
  for (const auto& s : stages)
    if (s.step == "blowup") ++n;
  return n;
}

std::vector<const ResolutionNode*> ResolutionTrace::stage_nodes(int stage) const {
  std::vector<const ResolutionNode*> out;
  for (const auto& n : nodes)
    if (n.stage == stage) out.push_back(&n);
  return out;
}

ResolutionTrace resolve_object(const Ideal& J, unsigned b, const std::vector<std::size_t>& initial_divisors,
                               const DriverOptions& options) {
  return Runner(J, b, initial_divisors, options).run();
}

ResolutionTrace principalize(const Ideal& I, const DriverOptions& options) {
  DriverOptions opt = options;
  opt.certify = true;
  return resolve_object(I, 1, {}, opt);
}

ResolutionTrace embedded_desing(const Ideal& I, DriverOptions options) {
  options.track_desing = true;
  return principalize(I, options);
}

bool is_smooth(const Ideal& I, std::size_t r) {
  if (I.is_trivial()) return true;
  const auto& gb = I.groebner();
  const std::size_t n = I.ring()->size();
  if (r == 0) return gb.empty();
  if (gb.size() < r || r > n) return false;
  std::vector<std::vector<Polynomial>> jac;
  for (const auto& g : gb) {
    std::vector<Polynomial> row;
    for (std::size_t v = 0; v < n; ++v) row.push_back(derivative(g, v));
    jac.push_back(std::move(row));
  }
  std::vector<Polynomial> gens = gb;
  for_each_subset(gb.size(), r, [&](const std::vector<std::size_t>& rows) {
    for_each_subset(n, r, [&](const std::vector<std::size_t>& cols) {
      std::vector<std::vector<Polynomial>> m;
      for (auto i : rows) {
        std::vector<Polynomial> row;
        for (auto j : cols) row.push_back(jac[i][j]);
        m.push_back(std::move(row));
      }
      Polynomial d = determinant(std::move(m));
      if (!d.is_zero()) gens.push_back(std::move(d));
    });
  });
  return Ideal(I.ring(), gens).is_trivial();
}

std::size_t check_cross_chart(const ResolutionTrace& trace, int stage, std::size_t samples, std::mt19937_64& rng) {
  auto nodes = trace.stage_nodes(stage);
  std::vector<int> among;
  std::map<int, const ResolutionNode*> by_chart;
  for (auto* n : nodes) {
    among.push_back(n->chart);
    by_chart[n->chart] = n;
  }
  std::uniform_int_distribution<int> num(-3, 3), den(1, 2), coin(0, 2);
  std::size_t compared = 0;
  for (auto* na : nodes) {
    const Chart& a = trace.tree.chart(na->chart);
    auto split_a = exceptional_exponents(na->J, a);
    for (std::size_t s = 0; s < samples; ++s) {
      std::vector<Rational> p;
      for (std::size_t v = 0; v < a.ring->size(); ++v) {
        if (coin(rng) == 0) p.emplace_back(0);
        else p.emplace_back(Rational(num(rng), den(rng)));
        p.back().canonicalize();
      }
      auto through = [](const Chart& c, const std::vector<Rational>& q) {
        std::set<DivisorLabel> out;
        for (const auto& [v, l] : c.exceptional)
          if (q[v] == 0) out.insert(l);
        return out;
      };
      const unsigned ord_a = order_at_point(na->J, p);
      const unsigned red_a = order_at_point(split_a.reduced, p);
      const auto thr_a = through(a, p);
      for (const auto& loc : trace.tree.locate(na->chart, p, among)) {
        if (loc.chart == na->chart) continue;
        const ResolutionNode* nb = by_chart.at(loc.chart);
        const Chart& b = trace.tree.chart(loc.chart);
        auto split_b = exceptional_exponents(nb->J, b);
        const unsigned ord_b = order_at_point(nb->J, loc.point);
        const unsigned red_b = order_at_point(split_b.reduced, loc.point);
        if (ord_a != ord_b || red_a != red_b || thr_a != through(b, loc.point))
          throw InvariantViolation("charts " + std::to_string(na->chart) + " and " + std::to_string(loc.chart) +
                                   " disagree at stage " + std::to_string(stage));
        ++compared;
      }
    }
  }
  return compared;
}

}  // namespace desing
