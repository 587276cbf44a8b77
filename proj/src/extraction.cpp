#include "carpentry/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "carpentry/parallel.hpp"

namespace carpentry {

void IceeParams::validate() const
{
    const auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(what);
    };
    require(T >= 1 && n >= 1 && P >= 1 && population >= 1, "T, n, P and population must be at least 1");
    require(iterations >= 1 && generations >= 1 && designs_per_iteration >= 1,
            "iterations, generations and designs per iteration must be at least 1");
    require(workers >= 1, "workers must be at least 1");
    require(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0, 1]");
    require(p_c >= 0.0 && p_c <= 1.0 && p_m >= 0.0 && p_m <= 1.0, "p_c and p_m must lie in [0, 1]");
    require(stall_ratio >= 0.0, "stall ratio must be non-negative");
    if (reference) {
        require(reference->coords.size() == static_cast<std::size_t>(mode),
                "reference point dimension must match the objective count");
    }
}

ReferencePoint IceeParams::reference_point() const
{
    return reference.value_or(ReferencePoint::default_for(mode));
}

std::string plan_fingerprint(const FabPlan& plan)
{
    std::ostringstream os;
    os << plan.design_id << '\n';
    for (const auto& s : plan.stocks) {
        os << s.stock_id << ':';
        for (const auto& p : s.placements) os << p.part_id << '@' << p.x.ticks << ',' << p.y.ticks << ';';
        os << '\n';
    }
    for (const auto& c : plan.cuts) {
        os << to_string(c.tool) << ' ' << c.stock << ' ' << (c.line.axis == Axis::X ? 'x' : 'y') << c.line.at.ticks
           << ' ' << c.line.span_begin.ticks << ' ' << c.line.span_end.ticks << ' ' << c.angle << ' '
           << c.stack_group.value_or("-") << '\n';
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(stable_hash(os.str())));
    return buf;
}

bool Archive::offer(Solution s)
{
    for (const auto& kept : front_) {
        if (weakly_dominates(kept.cost, s.cost)) return false;
    }
    std::erase_if(front_, [&](const Solution& kept) { return dominates(s.cost, kept.cost); });
    front_.push_back(std::move(s));
    return true;
}

std::vector<CostVector> Archive::costs() const
{
    std::vector<CostVector> out;
    for (const auto& s : front_) out.push_back(s.cost);
    return out;
}

std::vector<Solution> Archive::sorted() const
{
    auto out = front_;
    std::sort(out.begin(), out.end(), [](const Solution& a, const Solution& b) {
        return std::tie(a.cost.material, a.cost.precision, a.cost.time, a.design.id, a.plan_id) <
               std::tie(b.cost.material, b.cost.precision, b.cost.time, b.design.id, b.plan_id);
    });
    return out;
}

void optimize_new_nodes(SearchState& state, const std::vector<NodeId>& nodes, const Libraries& libs,
                        const IceeParams& params)
{
    std::vector<const PackedStock*> todo;
    std::set<std::string> queued;
    for (auto id : nodes) {
        if (!state.graph.has_node(id)) continue;
        const auto& node = state.graph.node(id);
        if (!node.is_atomic()) continue;
        const auto key = geometry_key(node.atomic().stock);
        if (state.orders.contains(key) || !queued.insert(key).second) continue;
        todo.push_back(&node.atomic().stock);
    }
    std::vector<OrderCacheEntry> results(todo.size());
    parallel_for(todo.size(), params.workers, [&](std::size_t i) {
        Rng rng(enode_seed(params.seed, geometry_key(*todo[i])));
        results[i] = optimize_enode(*todo[i], libs, params.P, rng);
    });
    for (std::size_t i = 0; i < todo.size(); ++i) state.orders.insert(geometry_key(*todo[i]), std::move(results[i]));
}

namespace {

struct Individual {
    std::string design_id;
    Term term;
    Point fitness;
    std::size_t rank{0};
    double crowding{0.0};

    [[nodiscard]] std::string key() const { return design_id + "#" + term.key(); }
};

Term repair(const BopEGraph& g, ClassId root, const std::map<ClassId, NodeId>& prefs, Rng& rng)
{
    Term t;
    t.root = root;
    std::vector<ClassId> stack{root};
    while (!stack.empty()) {
        const ClassId c = stack.back();
        stack.pop_back();
        if (t.chosen.count(c)) continue;
        const auto& cls = g.eclass(c);
        NodeId n;
        const auto it = prefs.find(c);
        if (it != prefs.end() && g.has_node(it->second) && g.node(it->second).eclass == c) {
            n = it->second;
        } else {
            n = cls.nodes[uniform_index(rng, cls.nodes.size())];
        }
        t.chosen[c] = n;
        const auto& node = g.node(n);
        if (!node.is_atomic()) {
            const auto& ch = node.compose().children;
            for (auto r = ch.rbegin(); r != ch.rend(); ++r) stack.push_back(*r);
        }
    }
    return t;
}

std::set<ClassId> subtree(const BopEGraph& g, const Term& term, ClassId from)
{
    std::set<ClassId> out;
    std::vector<ClassId> stack{from};
    while (!stack.empty()) {
        const ClassId c = stack.back();
        stack.pop_back();
        if (!out.insert(c).second) continue;
        const auto& node = g.node(term.chosen.at(c));
        if (!node.is_atomic()) {
            for (auto child : node.compose().children) stack.push_back(child);
        }
    }
    return out;
}

Individual crossover_child(const BopEGraph& g, const Individual& base, const Individual& donor, ClassId shared,
                           Rng& rng)
{
    auto prefs = base.term.chosen;
    for (auto c : subtree(g, donor.term, shared)) prefs[c] = donor.term.chosen.at(c);
    return Individual{base.design_id, repair(g, base.term.root, prefs, rng), {}, 0, 0.0};
}

void mutate(const BopEGraph& g, Individual& ind, Rng& rng)
{
    std::vector<ClassId> classes;
    for (const auto& [c, n] : ind.term.chosen) classes.push_back(c);
    const ClassId c = classes[uniform_index(rng, classes.size())];
    const auto& nodes = g.eclass(c).nodes;
    auto prefs = ind.term.chosen;
    prefs[c] = nodes[uniform_index(rng, nodes.size())];
    ind.term = repair(g, ind.term.root, prefs, rng);
}

void rank_and_crowd(std::vector<Individual>& pop)
{
    const std::size_t n = pop.size();
    std::vector<std::vector<std::size_t>> dominated_by(n);
    std::vector<std::size_t> count(n, 0);
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (dominates(pop[i].fitness, pop[j].fitness)) dominated_by[i].push_back(j);
            else if (dominates(pop[j].fitness, pop[i].fitness)) ++count[i];
        }
        if (count[i] == 0) current.push_back(i);
    }
    std::size_t rank = 0;
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (auto i : current) {
            pop[i].rank = rank;
            pop[i].crowding = 0.0;
        }
        const std::size_t dims = pop[current.front()].fitness.size();
        for (std::size_t d = 0; d < dims; ++d) {
            auto sorted = current;
            std::stable_sort(sorted.begin(), sorted.end(),
                             [&](std::size_t a, std::size_t b) { return pop[a].fitness[d] < pop[b].fitness[d]; });
            const double lo = pop[sorted.front()].fitness[d];
            const double hi = pop[sorted.back()].fitness[d];
            pop[sorted.front()].crowding = std::numeric_limits<double>::infinity();
            pop[sorted.back()].crowding = std::numeric_limits<double>::infinity();
            if (hi <= lo) continue;
            for (std::size_t k = 1; k + 1 < sorted.size(); ++k) {
                pop[sorted[k]].crowding += (pop[sorted[k + 1]].fitness[d] - pop[sorted[k - 1]].fitness[d]) / (hi - lo);
            }
        }
        for (auto i : current) {
            for (auto j : dominated_by[i]) {
                if (--count[j] == 0) next.push_back(j);
            }
        }
        std::sort(next.begin(), next.end());
        current = std::move(next);
        ++rank;
    }
}

bool better(const Individual& a, const Individual& b)
{
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.crowding > b.crowding;
}

const Individual& tournament(const std::vector<Individual>& pop, Rng& rng)
{
    const auto& a = pop[uniform_index(rng, pop.size())];
    const auto& b = pop[uniform_index(rng, pop.size())];
    return better(b, a) ? b : a;
}

class Evaluator {
public:
    Evaluator(SearchState& state, const Libraries& libs, const IceeParams& params, std::vector<Solution>& out)
        : state_(state), libs_(libs), params_(params), out_(out)
    {
    }

    /// Fills fitness for every individual; new terms are evaluated in parallel
    /// against the archive as it stands now.
    void evaluate(std::vector<Individual>& pop)
    {
        std::vector<std::size_t> todo;
        std::set<std::string> queued;
        for (std::size_t i = 0; i < pop.size(); ++i) {
            const auto key = pop[i].key();
            if (state_.term_results.count(key) || !queued.insert(key).second) continue;
            todo.push_back(i);
        }
        const auto snapshot = state_.archive.costs();
        std::vector<SearchState::TermResult> results(todo.size());
        std::vector<std::size_t> evaluations(todo.size(), 0);
        parallel_for(todo.size(), params_.workers, [&](std::size_t k) {
            const auto& ind = pop[todo[k]];
            std::vector<PackedStock> stocks;
            for (auto id : term_atoms(state_.graph, ind.term)) stocks.push_back(state_.graph.node(id).atomic().stock);
            const auto layout = term_layout(ind.design_id, std::move(stocks), libs_);
            const auto bounds = term_bounds(layout, state_.orders, libs_, params_.mode);
            Rng rng(derive_seed(params_.seed, stable_hash(ind.key())));
            const RefineParams rp{params_.t, params_.exhaustive_limit};
            auto refined = refine_term(layout, bounds, snapshot, rp, libs_, params_.mode, rng);
            auto& r = results[k];
            r.pruned = refined.pruned;
            evaluations[k] = refined.evaluations;
            if (refined.pruned) {
                r.fitness = bounds.lower.values();
            } else {
                r.fitness = refined.plans.front().cost.values();
                for (const auto& p : refined.plans) {
                    const auto v = p.cost.values();
                    for (std::size_t d = 0; d < v.size(); ++d) r.fitness[d] = std::min(r.fitness[d], v[d]);
                }
                r.plans = std::move(refined.plans);
            }
        });
        for (std::size_t k = 0; k < todo.size(); ++k) {
            const auto& ind = pop[todo[k]];
            state_.evaluations += evaluations[k];
            if (results[k].pruned) ++state_.pruned;
            const Design& design = state_.designs.at(ind.design_id);
            for (const auto& p : results[k].plans) {
                out_.push_back(Solution{design, p.plan, p.cost, plan_fingerprint(p.plan), ind.term});
            }
            state_.term_results.emplace(ind.key(), std::move(results[k]));
        }
        for (auto& ind : pop) ind.fitness = state_.term_results.at(ind.key()).fitness;
    }

private:
    SearchState& state_;
    const Libraries& libs_;
    const IceeParams& params_;
    std::vector<Solution>& out_;
};

void dedupe(std::vector<Individual>& pop)
{
    std::set<std::string> seen;
    std::vector<Individual> out;
    for (auto& ind : pop) {
        if (seen.insert(ind.key()).second) out.push_back(std::move(ind));
    }
    pop = std::move(out);
}

} // namespace

std::vector<Solution> ga_extract(SearchState& state, const std::vector<std::string>& design_ids,
                                 const Libraries& libs, const IceeParams& params, Rng& rng)
{
    std::vector<Solution> out;
    if (design_ids.empty()) return out;
    const auto& g = state.graph;
    Evaluator evaluator(state, libs, params, out);

    std::vector<ClassId> roots;
    BigCount total = 0;
    for (const auto& id : design_ids) {
        const auto root = g.root_of(id);
        if (!root) throw EGraphError("design '" + id + "' has no root class");
        roots.push_back(*root);
        total += count_terms(g, *root);
    }

    std::vector<Individual> pop;
    if (total <= params.population) {
        // Small spaces are evaluated exhaustively.
        for (std::size_t i = 0; i < design_ids.size(); ++i) {
            for (auto& t : enumerate_terms(g, roots[i], params.population)) {
                pop.push_back(Individual{design_ids[i], std::move(t), {}, 0, 0.0});
            }
        }
        evaluator.evaluate(pop);
        return out;
    }

    for (std::size_t i = 0; i < params.population; ++i) {
        const std::size_t d = i % design_ids.size();
        pop.push_back(Individual{design_ids[d], sample_term(g, roots[d], rng), {}, 0, 0.0});
    }
    dedupe(pop);
    evaluator.evaluate(pop);
    rank_and_crowd(pop);

    for (std::size_t gen = 0; gen < params.generations; ++gen) {
        std::vector<Individual> offspring;
        while (offspring.size() < params.population) {
            Individual a = tournament(pop, rng);
            Individual b = tournament(pop, rng);
            if (uniform_unit(rng) < params.p_c) {
                std::vector<ClassId> shared;
                for (const auto& [c, n] : a.term.chosen) {
                    if (b.term.chosen.count(c)) shared.push_back(c);
                }
                if (!shared.empty()) {
                    const ClassId c = shared[uniform_index(rng, shared.size())];
                    Individual ca = crossover_child(g, a, b, c, rng);
                    Individual cb = crossover_child(g, b, a, c, rng);
                    a = std::move(ca);
                    b = std::move(cb);
                }
            }
            if (uniform_unit(rng) < params.p_m) mutate(g, a, rng);
            if (uniform_unit(rng) < params.p_m) mutate(g, b, rng);
            offspring.push_back(std::move(a));
            if (offspring.size() < params.population) offspring.push_back(std::move(b));
        }
        evaluator.evaluate(offspring);

        std::vector<Individual> combined = std::move(pop);
        combined.insert(combined.end(), std::make_move_iterator(offspring.begin()),
                        std::make_move_iterator(offspring.end()));
        dedupe(combined);
        rank_and_crowd(combined);
        std::vector<std::size_t> order(combined.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t x, std::size_t y) { return better(combined[x], combined[y]); });
        pop.clear();
        for (std::size_t i = 0; i < order.size() && pop.size() < params.population; ++i) {
            pop.push_back(std::move(combined[order[i]]));
        }
        rank_and_crowd(pop);
    }
    return out;
}

namespace {

double stock_price(const std::string& stock_id, const Libraries& libs)
{
    FabPlan plan;
    plan.stocks.push_back(PlanStock{stock_id, {}});
    return material_cost(plan, libs);
}

std::map<NodeId, double> node_scores(const SearchState& state, const Libraries& libs, ObjectiveMode mode)
{
    const auto& g = state.graph;
    std::map<NodeId, double> score;
    std::map<ClassId, double> best;
    for (auto c : g.topological_order()) {
        double b = std::numeric_limits<double>::infinity();
        for (auto n : g.eclass(c).nodes) {
            const auto& node = g.node(n);
            double s = 0.0;
            if (node.is_atomic()) {
                const auto& stock = node.atomic().stock;
                s = stock_price(stock.stock_id, libs);
                if (const auto* e = state.orders.find(geometry_key(stock))) {
                    s += e->best_time.seconds / 60.0;
                    if (mode == ObjectiveMode::Three) s += e->best_precision.precision.inches();
                }
            } else {
                for (auto child : node.compose().children) s += best.at(child);
            }
            score[n] = s;
            b = std::min(b, s);
        }
        best[c] = b;
    }
    return score;
}

RunReport run(const DesignSpace& space, const Libraries& libs, const IceeParams& params, bool baseline,
              std::ostream* log)
{
    params.validate();
    const Design base = space.base_design();
    if (const auto violations = validate_design(base, libs); !violations.empty()) {
        std::string msg = "base design is infeasible:";
        for (const auto& v : violations) msg += "\n  " + v.part_id + ": " + v.message;
        throw InputError(msg);
    }

    RunReport report;
    report.baseline = baseline;
    report.params = params;
    report.design_space_size = baseline ? "1" : space.cardinality().str();
    const ReferencePoint ref = params.reference_point();

    SearchState state;
    std::set<std::string> explored;
    Rng rng(derive_seed(params.seed, 0x1cee));
    double hv_prev = 0.0;
    std::size_t stall = 0;

    const auto sample_unexplored = [&]() -> Design {
        for (int attempt = 0; attempt < 64; ++attempt) {
            Design d = sample_design(space, rng);
            if (!explored.count(d.id)) return d;
        }
        return sample_design(space, rng);
    };

    for (std::size_t it = 0; it < params.iterations; ++it) {
        IterationRecord rec;
        rec.iteration = it;

        std::vector<Design> slots;
        if (baseline) {
            slots.push_back(base);
        } else {
            std::vector<std::string> front_designs;
            for (const auto& s : state.archive.solutions()) front_designs.push_back(s.design.id);
            std::sort(front_designs.begin(), front_designs.end());
            front_designs.erase(std::unique(front_designs.begin(), front_designs.end()), front_designs.end());
            for (std::size_t s = 0; s < params.designs_per_iteration; ++s) {
                if (it == 0 && s == 0) {
                    slots.push_back(base);
                } else if (!front_designs.empty() && uniform_unit(rng) < params.alpha) {
                    slots.push_back(state.designs.at(front_designs[uniform_index(rng, front_designs.size())]));
                } else {
                    slots.push_back(sample_unexplored());
                }
                explored.insert(slots.back().id);
            }
        }

        std::vector<Design> chosen;
        std::map<std::string, std::size_t> multiplicity;
        for (const auto& d : slots) {
            if (multiplicity[d.id]++ == 0) chosen.push_back(d);
        }

        std::vector<std::vector<Arrangement>> arrangements(chosen.size());
        std::vector<std::string> failures(chosen.size());
        parallel_for(chosen.size(), params.workers, [&](std::size_t i) {
            const auto& d = chosen[i];
            if (const auto v = validate_design(d, libs); !v.empty()) {
                failures[i] = d.id + ": " + v.front().part_id + ": " + v.front().message;
                return;
            }
            const std::size_t budget = std::max<std::size_t>(1, params.T * multiplicity.at(d.id) / slots.size());
            Rng drng(derive_seed(params.seed, stable_hash(d.id + "#" + std::to_string(it))));
            try {
                arrangements[i] = generate_arrangements(d, libs, budget, drng);
            } catch (const InputError& e) {
                failures[i] = d.id + ": " + e.what();
            }
        });

        std::vector<std::string> active;
        std::vector<NodeId> new_nodes;
        for (std::size_t i = 0; i < chosen.size(); ++i) {
            if (!failures[i].empty()) {
                report.warnings.push_back("skipped design " + failures[i]);
                continue;
            }
            if (arrangements[i].empty()) continue;
            state.designs.emplace(chosen[i].id, chosen[i]);
            for (const auto& a : arrangements[i]) {
                auto added = state.graph.add_arrangement(chosen[i], a);
                new_nodes.insert(new_nodes.end(), added.begin(), added.end());
            }
            rec.arrangements += arrangements[i].size();
            active.push_back(chosen[i].id);
            rec.designs.push_back(chosen[i].id);
        }
        rec.new_nodes = new_nodes.size();
        optimize_new_nodes(state, new_nodes, libs, params);

        BigCount terms = 0;
        for (const auto& [id, root] : state.graph.roots()) terms += count_terms(state.graph, root);
        rec.terms = terms.str();

        const std::size_t evals_before = state.evaluations;
        const std::size_t pruned_before = state.pruned;
        Rng ga_rng(derive_seed(params.seed, 0x6a00 + it));
        for (auto& s : ga_extract(state, active, libs, params, ga_rng)) state.archive.offer(std::move(s));
        rec.evaluations = state.evaluations - evals_before;
        rec.pruned = state.pruned - pruned_before;

        std::vector<Term> front_terms;
        for (const auto& s : state.archive.solutions()) front_terms.push_back(s.term);
        const auto scores = node_scores(state, libs, params.mode);
        state.graph = state.graph.contract(front_terms, params.n, [&](NodeId id) { return scores.at(id); });
        rec.classes = state.graph.class_count();
        rec.nodes = state.graph.node_count();

        const auto costs = state.archive.costs();
        rec.front_size = costs.size();
        rec.hypervolume = hypervolume(costs, ref);
        if (log) {
            *log << "iteration " << it << ": designs " << rec.designs.size() << ", evaluations " << rec.evaluations
                 << ", front " << rec.front_size << ", hypervolume " << rec.hypervolume << '\n';
        }
        report.iterations.push_back(rec);

        if (it > 0) {
            const double gain = rec.hypervolume - hv_prev;
            stall = gain < params.stall_ratio * std::max(hv_prev, std::numeric_limits<double>::min()) ? stall + 1 : 0;
        }
        hv_prev = rec.hypervolume;
        if (stall >= params.stall_iterations) break;
    }

    report.explored_designs.assign(explored.begin(), explored.end());
    if (baseline) report.explored_designs = {base.id};
    report.front = state.archive.sorted();
    report.hypervolume = hypervolume(state.archive.costs(), ref, &report.warnings);
    return report;
}

} // namespace

RunReport icee_run(const DesignSpace& space, const Libraries& libs, const IceeParams& params, std::ostream* log)
{
    return run(space, libs, params, false, log);
}

RunReport baseline_run(const DesignSpace& space, const Libraries& libs, const IceeParams& params, std::ostream* log)
{
    return run(space, libs, params, true, log);
}

} // namespace carpentry
