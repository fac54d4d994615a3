#include "ordsep/ramsey.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace ordsep {

Color PairColoring::at(const Node& s, const Node& t) const {
    auto it = table.find({s, t});
    if (it == table.end()) throw std::out_of_range("pair not colored: " + node_to_string(s) + " < " + node_to_string(t));
    return it->second;
}

std::set<Color> PairColoring::colors() const {
    std::set<Color> out;
    for (const auto& [k, c] : table) out.insert(c);
    return out;
}

void PairColoring::validate_total() const {
    for (const auto& [s, t] : lambda_pairs(tree)) at(s, t);
}

Color TripleColoring::at(const Node& s, const Node& t, const Node& v) const {
    auto it = table.find({s, t, v});
    if (it == table.end()) throw std::out_of_range("triple not colored");
    return it->second;
}

std::set<Color> TripleColoring::colors() const {
    std::set<Color> out;
    for (const auto& [k, c] : table) out.insert(c);
    return out;
}

void TripleColoring::validate_total() const {
    for (const auto& [s, t, v] : lambda_e_triples(tree)) at(s, t, v);
}

std::size_t chain_ramsey_bound(std::size_t n) {
    if (n < 2) return 1;
    // C(2n-2, n-1)
    std::size_t a = 2 * n - 2, b = n - 1;
    BigInt num = 1, den = 1;
    for (std::size_t i = 1; i <= b; ++i) {
        num *= BigInt(a - b + i);
        den *= BigInt(i);
    }
    return static_cast<std::size_t>(num / den);
}

namespace {

// Chain nodes in prefix order; throws when the tree is not a chain.
std::vector<Node> chain_positions(const BTree& t) {
    std::vector<Node> out = t.nodes();
    std::sort(out.begin(), out.end(), [](const Node& a, const Node& b) { return a.size() < b.size(); });
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
        if (out[i].size() + 1 != out[i + 1].size() || !is_proper_prefix(out[i], out[i + 1]))
            throw std::invalid_argument("domain is not a chain");
    return out;
}

} // namespace

std::optional<ChainHomogeneous> homogenize_chain(std::size_t n, const PairColoring& coloring) {
    auto pos = chain_positions(coloring.tree);
    std::size_t m = pos.size();
    if (n == 0 || n > m) return std::nullopt;
    if (n == 1) return ChainHomogeneous{{1}, 0};
    // lexicographically first homogeneous n-subset
    std::vector<std::size_t> pick;
    std::optional<Color> ref;
    std::optional<ChainHomogeneous> found;
    std::function<void(std::size_t)> rec = [&](std::size_t next) {
        if (found) return;
        if (pick.size() == n) {
            found = ChainHomogeneous{pick, *ref};
            return;
        }
        for (std::size_t i = next; i <= m && !found; ++i) {
            std::optional<Color> sub = ref;
            bool ok = true;
            for (auto j : pick) {
                Color c = coloring.at(pos[j - 1], pos[i - 1]);
                if (sub && *sub != c) {
                    ok = false;
                    break;
                }
                sub = c;
            }
            if (!ok) continue;
            pick.push_back(i);
            std::swap(ref, sub);
            rec(i + 1);
            std::swap(ref, sub);
            pick.pop_back();
        }
    };
    rec(1);
    return found;
}

std::size_t max_homogeneous_chain(const PairColoring& coloring, Color eps) {
    std::size_t best = 0;
    std::vector<Node> chain;
    std::function<void()> rec = [&]() {
        best = std::max(best, chain.size());
        const Node* last = chain.empty() ? nullptr : &chain.back();
        for (const auto& u : coloring.tree.nodes()) {
            if (last && !is_proper_prefix(*last, u)) continue;
            bool ok = true;
            for (const auto& c : chain)
                if (coloring.at(c, u) != eps) {
                    ok = false;
                    break;
                }
            if (ok) {
                chain.push_back(u);
                rec();
                chain.pop_back();
            }
        }
    };
    rec();
    return best;
}

namespace {

// Largest subset of chain positions homogeneous for a binary coloring,
// include-first DFS with a size bound prune (deterministic).
std::vector<std::size_t> max_homogeneous_subset(const std::vector<Node>& pos,
                                                const std::function<Color(std::size_t, std::size_t)>& color) {
    std::size_t m = pos.size();
    std::vector<std::size_t> best, cur;
    std::optional<Color> curColor;
    std::function<void(std::size_t, std::optional<Color>)> rec = [&](std::size_t i, std::optional<Color> cc) {
        if (cur.size() > best.size()) best = cur;
        if (i > m || cur.size() + (m - i + 1) <= best.size()) return;
        // include i
        bool ok = true;
        std::optional<Color> next = cc;
        for (auto j : cur) {
            Color c = color(j, i);
            if (next && *next != c) {
                ok = false;
                break;
            }
            next = c;
        }
        if (ok) {
            cur.push_back(i);
            rec(i + 1, next);
            cur.pop_back();
        }
        rec(i + 1, cc);
    };
    rec(1, std::nullopt);
    return best;
}

MonotoneMap chain_index_map(const BTree& domain_chain, const BTree& codomain, const std::vector<Node>& cod_pos,
                            const std::vector<std::size_t>& indices) {
    auto dom_pos = chain_positions(domain_chain);
    std::map<Node, Node> m;
    for (std::size_t i = 0; i < dom_pos.size(); ++i) m[dom_pos[i]] = cod_pos[indices[i] - 1];
    return MonotoneMap(domain_chain, codomain, std::move(m));
}

} // namespace

HomogeneousWitness reduce_colors(const PairColoring& coloring, std::size_t n_target) {
    auto pos = chain_positions(coloring.tree);
    std::vector<StageReport> stages;
    // current selection of original positions (1-based), refined per stage
    std::vector<std::size_t> live(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) live[i] = i + 1;

    auto live_colors = [&]() {
        std::set<Color> cs;
        for (std::size_t a = 0; a < live.size(); ++a)
            for (std::size_t b = a + 1; b < live.size(); ++b)
                cs.insert(coloring.at(pos[live[a] - 1], pos[live[b] - 1]));
        return cs;
    };

    Color fallback = coloring.table.empty() ? 0 : coloring.table.begin()->second;
    Color final_color = fallback;
    for (;;) {
        auto cs = live_colors();
        if (cs.size() <= 1) {
            final_color = cs.empty() ? fallback : *cs.begin();
            break;
        }
        // split the present colors into two halves (binary stage), or run the
        // final 2-color stage directly
        std::vector<Color> sorted(cs.begin(), cs.end());
        std::size_t half = (sorted.size() + 1) / 2;
        std::set<Color> lowhalf(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(half));
        auto binary = [&](std::size_t a, std::size_t b) -> Color {
            Color c = coloring.at(pos[live[a - 1] - 1], pos[live[b - 1] - 1]);
            if (sorted.size() == 2) return c; // delegate the 2-color case unchanged
            return lowhalf.count(c) ? 0 : 1;
        };
        std::vector<Node> livepos;
        for (auto i : live) livepos.push_back(pos[i - 1]);
        auto sub = max_homogeneous_subset(livepos, binary);
        StageReport rep{"binary-homogenize", live.size(), sub.size(),
                        std::to_string(cs.size()) + " colors present; 2-color bound C(2n-2,n-1)"};
        stages.push_back(rep);
        if (sub.size() < 2 && live.size() >= 2) {
            // a single element is always homogeneous; only degenerate inputs land here
            sub = {1};
        }
        std::vector<std::size_t> next;
        for (auto i : sub) next.push_back(live[i - 1]);
        live = std::move(next);
        if (live.size() < n_target)
            throw InsufficientDomain("domain too small at stage " + std::to_string(stages.size()), stages);
        if (live.size() <= 1) {
            final_color = 0;
            break;
        }
    }
    if (live.size() < n_target)
        throw InsufficientDomain("domain too small: " + std::to_string(live.size()) + " < " +
                                 std::to_string(n_target), stages);

    BTree dom = BTree::chain(live.size());
    MonotoneMap theta = chain_index_map(dom, coloring.tree, pos, live);
    HomogeneousWitness w;
    w.map = extend(theta);
    w.color = final_color;
    w.stages = std::move(stages);
    w.verified = true;
    for (const auto& [s, t] : lambda_pairs(dom))
        if (coloring.at(theta(s), theta(t)) != final_color) w.verified = false;
    if (!w.verified) throw std::logic_error("reduce_colors produced an unverified witness");
    return w;
}

namespace {

// Backtracking search for a monotone map dom -> cod whose images satisfy
// `allowed`; optionally images of maximal nodes must be maximal.
std::optional<std::map<Node, Node>> search_monotone(
    const BTree& dom, const BTree& cod, const std::function<bool(const Node&, const Node&)>& allowed,
    bool preserve_max) {
    std::map<Node, Node> theta;
    const auto& nodes = dom.nodes(); // sorted: parents precede children
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (i == nodes.size()) return true;
        const Node& t = nodes[i];
        const Node* anchor = nullptr;
        if (t.size() > 1) anchor = &theta.at(Node(t.begin(), t.end() - 1));
        for (const auto& u : cod.nodes()) {
            if (anchor && !is_proper_prefix(*anchor, u)) continue;
            if (preserve_max && dom.is_max(t) && !cod.is_max(u)) continue;
            if (!allowed(t, u)) continue;
            theta[t] = u;
            if (rec(i + 1)) return true;
            theta.erase(t);
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return theta;
}

// Joint search for (theta, e) : dom -> cod with e into max_pool and the
// E-pair constraint ok(theta(s), e(v)) for every s <= v in MAX(dom).
struct ExtendedSearch {
    std::map<Node, Node> theta;
    std::map<Node, Node> ext;
};
std::optional<ExtendedSearch> search_extended(
    const BTree& dom, const BTree& cod, const std::vector<Node>& max_pool,
    const std::function<bool(const Node&, const Node&)>& theta_allowed,
    const std::function<bool(const Node&, const Node&)>& epair_ok) {
    ExtendedSearch st;
    const auto& nodes = dom.nodes();
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (i == nodes.size()) return true;
        const Node& t = nodes[i];
        const Node* anchor = nullptr;
        if (t.size() > 1) anchor = &st.theta.at(Node(t.begin(), t.end() - 1));
        for (const auto& u : cod.nodes()) {
            if (anchor && !is_proper_prefix(*anchor, u)) continue;
            if (!theta_allowed(t, u)) continue;
            st.theta[t] = u;
            bool viable = true;
            if (dom.is_max(t)) {
                viable = false;
                for (const auto& w : max_pool) {
                    if (!is_prefix(u, w)) continue;
                    bool all = true;
                    for (std::size_t len = 1; len <= t.size() && all; ++len) {
                        Node s(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(len));
                        if (!epair_ok(st.theta.at(s), w)) all = false;
                    }
                    if (all) {
                        st.ext[t] = w;
                        viable = true;
                        break;
                    }
                }
            }
            if (viable && rec(i + 1)) return true;
            st.theta.erase(t);
            st.ext.erase(t);
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return st;
}

BTree prefix_chain(const std::vector<Node>& chain_pos, std::size_t j) {
    std::vector<Node> nodes(chain_pos.begin(), chain_pos.begin() + static_cast<std::ptrdiff_t>(j));
    return BTree::from_nodes(std::move(nodes));
}

Node least_max_of(const BTree& t) {
    auto maxes = t.max_nodes();
    return maxes.front(); // sorted
}

} // namespace

/// Monotone map [T, C_n] -> [T, C_k] sending level i to level levels[i-1],
/// unit restrictions order-isomorphic; gap levels descend through the
/// lexicographically least maximal node of T.
static MonotoneMap level_jump_map(const ProductTree& dom, const ProductTree& cod,
                                  const std::vector<std::size_t>& levels) {
    auto cod_chain = chain_positions(cod.right());
    Node gap = least_max_of(dom.left());
    std::map<Node, Node> m;
    for (const auto& x : dom.tree().nodes()) {
        auto blocks = dom.decompose(x);
        Node img;
        std::size_t bi = 0;
        for (std::size_t j = 1; j <= levels[blocks.size() - 1]; ++j) {
            const Label& right = cod_chain[j - 1].back();
            if (bi < blocks.size() && j == levels[bi]) {
                for (const auto& lab : blocks[bi].left) img.emplace_back(lab, right);
                ++bi;
            } else {
                for (const auto& lab : gap) img.emplace_back(lab, right);
            }
        }
        m[x] = std::move(img);
    }
    return MonotoneMap(dom.tree(), cod.tree(), std::move(m));
}

namespace {

struct ClaimResult {
    MonotoneMap theta;            // [T, C_m] -> [T, C_{2^(m-1)}]
    std::vector<Color> level_eps; // eps_j per level j (entry 0 unused)
    std::vector<StageReport> stages;
};

// The prehomogenization claim: monotone theta with cross-level pair colors
// depending only on the upper level.  `f` colors Lambda([T, C_K]).
ClaimResult claim_recursion(std::size_t m, const BTree& t, const std::vector<Node>& right_chain,
                            const std::function<Color(const Node&, const Node&)>& f) {
    std::size_t K = std::size_t{1} << (m - 1);
    ProductTree cod(t, prefix_chain(right_chain, K));
    if (m == 1) {
        ClaimResult r{MonotoneMap::identity(cod.tree()), {0, 0}, {}};
        return r;
    }
    // Top = first K-1 levels = [T, C_{K-1}] literally
    ProductTree top(t, prefix_chain(right_chain, K - 1));

    // stabilize the unit beneath each maximal node of Top
    std::map<Node, std::map<Node, Node>> stabilizer; // v -> (T -> T)
    std::map<Node, std::vector<Color>> eps_vec;      // v -> tuple by prefix length
    for (const auto& v : top.tree().max_nodes()) {
        const Label& bottom_label = right_chain[K - 1].back();
        auto iota = [&](const Node& s) {
            Node u = v;
            for (const auto& lab : s) u.emplace_back(lab, bottom_label);
            return u;
        };
        auto tuple_of = [&](const Node& s) {
            std::vector<Color> tup;
            Node u = iota(s);
            for (std::size_t len = 1; len <= v.size(); ++len)
                tup.push_back(f(Node(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(len)), u));
            return tup;
        };
        std::vector<std::vector<Color>> values;
        for (const auto& s : t.nodes()) values.push_back(tuple_of(s));
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        bool done = false;
        for (const auto& target : values) {
            auto res = search_monotone(
                t, t, [&](const Node&, const Node& img) { return tuple_of(img) == target; }, true);
            if (res) {
                stabilizer[v] = std::move(*res);
                eps_vec[v] = target;
                done = true;
                break;
            }
        }
        if (!done)
            throw InsufficientDomain("unit stabilization failed beneath " + node_to_string(v),
                                     {{"unit-stabilization", t.size(), 0, "no constant-color monotone self-image"}});
    }

    auto fprime = [&](const Node& s, const Node& v) -> Color { return eps_vec.at(v)[s.size() - 1]; };

    // extended monotone (Theta, E) : [T, C_{K/2}] -> Top with f' constant
    ProductTree half(t, prefix_chain(right_chain, K / 2));
    std::optional<ExtendedSearch> ext;
    Color eps_new = 0;
    for (Color cand : {Color{0}, Color{1}}) {
        ext = search_extended(
            half.tree(), top.tree(), top.tree().max_nodes(),
            [](const Node&, const Node&) { return true; },
            [&](const Node& img_s, const Node& img_v) { return fprime(img_s, img_v) == cand; });
        if (ext) {
            eps_new = cand;
            break;
        }
    }
    if (!ext)
        throw InsufficientDomain("no constant-color extended monotone map into the top levels",
                                 {{"replacement-step", half.tree().size(), 0, "both colors failed"}});
    MonotoneMap Theta(half.tree(), top.tree(), ext->theta);

    // recurse on the pulled-back coloring
    ClaimResult inner = claim_recursion(
        m - 1, t, right_chain, [&](const Node& s, const Node& u) { return f(Theta(s), Theta(u)); });

    // assemble on [T, C_m]
    ProductTree dom(t, prefix_chain(right_chain, m));
    std::map<Node, Node> theta;
    for (const auto& x : dom.tree().nodes()) {
        if (dom.level_of(x) <= m - 1) {
            theta[x] = Theta(inner.theta(x));
            continue;
        }
        Node anchor = dom.unit_of(x);
        auto blocks = dom.decompose(x);
        const Node& s = blocks.back().left;
        Node t_half = inner.theta(anchor);
        Node w = ext->ext.at(t_half);
        const auto& sigma = stabilizer.at(w);
        Node img = w;
        const Label& bottom_label = right_chain[K - 1].back();
        for (const auto& lab : sigma.at(s)) img.emplace_back(lab, bottom_label);
        theta[x] = std::move(img);
    }
    ClaimResult out{MonotoneMap(dom.tree(), cod.tree(), std::move(theta)), inner.level_eps, inner.stages};
    out.level_eps.resize(m + 1, 0);
    out.level_eps[m] = eps_new;
    out.stages.push_back({"claim-level", dom.tree().size(), out.theta.domain().size(),
                          "K = " + std::to_string(K)});
    return out;
}

} // namespace

LevelsResult homogenize_levels(const ProductTree& prod, const PairColoring& coloring, std::size_t n) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    auto right_chain = chain_positions(prod.right());
    std::size_t k = right_chain.size();
    std::size_t expected = std::size_t{1} << (2 * n - 2);
    if (k != expected)
        throw std::invalid_argument("homogenize_levels needs k = 2^(2n-2), got k = " + std::to_string(k));
    coloring.validate_total();
    auto f = [&](const Node& s, const Node& u) { return coloring.at(s, u); };

    if (n == 1) {
        // single level: vacuous condition, embed [T, C_1] as the first level
        ProductTree dom(prod.left(), prefix_chain(right_chain, 1));
        LevelsResult r{level_jump_map(dom, prod, {1}), 0, {{"level-embed", dom.tree().size(), dom.tree().size(), "n = 1"}}};
        return r;
    }

    std::size_t m = 2 * n - 1; // k = 2^(m-1)
    ClaimResult claim = claim_recursion(m, prod.left(), right_chain, f);

    // pigeonhole: n-1 indices among levels 2..m share a color; prepend level 1
    std::size_t c0 = 0, c1 = 0;
    for (std::size_t j = 2; j <= m; ++j) (claim.level_eps[j] == 0 ? c0 : c1)++;
    Color eps = (c0 >= c1) ? 0 : 1;
    std::vector<std::size_t> levels{1};
    for (std::size_t j = 2; j <= m && levels.size() < n; ++j)
        if (claim.level_eps[j] == eps) levels.push_back(j);
    if (levels.size() < n) throw std::logic_error("pigeonhole on 2n-2 levels cannot fail for n-1 hits");

    ProductTree claim_dom(prod.left(), prefix_chain(right_chain, m));
    ProductTree dom(prod.left(), prefix_chain(right_chain, n));
    MonotoneMap jump = level_jump_map(dom, claim_dom, levels);
    LevelsResult out{compose(jump, claim.theta), eps, claim.stages};
    out.stages.push_back({"level-select", claim_dom.tree().size(), dom.tree().size(),
                          "levels share eps = " + std::to_string(eps)});

    // self-check: every mapped cross-level pair carries eps
    for (const auto& [s, u] : lambda_pairs(dom.tree())) {
        if (dom.level_of(s) == dom.level_of(u)) continue;
        if (coloring.at(out.theta(s), out.theta(u)) != eps)
            throw std::logic_error("cross-level homogenization failed verification");
    }
    return out;
}

SelectResult select_levels(const ProductTree& prod, const std::map<Node, Color>& g, std::size_t n,
                           const std::vector<Color>& color_set) {
    auto right_chain = chain_positions(prod.right());
    std::size_t k = right_chain.size();
    if (n == 0 || color_set.empty() || k != n * color_set.size())
        throw std::invalid_argument("select_levels needs k = n|S|");
    // g must be total, unit-constant, and valued in S
    std::map<Node, Color> unit_value; // unit anchor -> value
    std::vector<std::vector<Color>> level_values(k);
    for (const auto& x : prod.tree().nodes()) {
        auto it = g.find(x);
        if (it == g.end()) throw std::invalid_argument("g not total at " + node_to_string(x));
        if (std::find(color_set.begin(), color_set.end(), it->second) == color_set.end())
            throw std::invalid_argument("g takes a value outside S");
        Node anchor = prod.unit_of(x);
        auto [pos, inserted] = unit_value.try_emplace(anchor, it->second);
        if (!inserted && pos->second != it->second)
            throw std::invalid_argument("g is not constant on the unit beneath " + node_to_string(anchor));
        level_values[prod.level_of(x) - 1].push_back(it->second);
    }
    std::vector<Color> profile(k);
    for (std::size_t j = 0; j < k; ++j) {
        std::sort(level_values[j].begin(), level_values[j].end());
        level_values[j].erase(std::unique(level_values[j].begin(), level_values[j].end()), level_values[j].end());
        if (level_values[j].size() != 1)
            throw InsufficientDomain(
                "level " + std::to_string(j + 1) + " carries several unit values; no finite stabilization at this scale",
                {{"level-stabilization", prod.tree().size(), 0, "level not single-valued"}});
        profile[j] = level_values[j][0];
    }
    // the value whose n-th occurrence along the levels is earliest
    std::map<Color, std::size_t> count;
    Color chosen = 0;
    std::vector<std::size_t> levels;
    bool done = false;
    for (std::size_t j = 1; j <= k && !done; ++j) {
        if (++count[profile[j - 1]] == n) {
            chosen = profile[j - 1];
            done = true;
        }
    }
    if (!done) throw std::logic_error("pigeonhole cannot fail when k = n|S|");
    for (std::size_t j = 1; j <= k && levels.size() < n; ++j)
        if (profile[j - 1] == chosen) levels.push_back(j);

    ProductTree dom(prod.left(), prefix_chain(right_chain, n));
    SelectResult out{level_jump_map(dom, prod, levels), chosen, levels};
    for (const auto& x : dom.tree().nodes())
        if (g.at(out.theta(x)) != chosen) throw std::logic_error("select_levels failed verification");
    return out;
}

namespace {

// Incomparability components: nodes grouped by their first label.
std::vector<BTree> components(const BTree& t) {
    std::map<Label, std::vector<Node>> groups;
    for (const auto& n : t.nodes()) groups[n[0]].push_back(n);
    std::vector<BTree> out;
    for (auto& [lab, nodes] : groups) out.push_back(BTree::from_nodes(std::move(nodes)));
    return out;
}

// Retained sub-B-tree on which maximal extensions are unique: chain
// components stay whole, branching components shrink to a deepest path.
std::pair<BTree, std::vector<StageReport>> unique_max_restriction(const BTree& t) {
    std::vector<Node> kept;
    std::size_t chains = 0, shrunk = 0;
    for (const auto& comp : components(t)) {
        BTree use = comp.has_unique_max_extensions() ? comp : comp.deepest_path();
        (use == comp ? chains : shrunk)++;
        for (const auto& n : use.nodes()) kept.push_back(n);
    }
    BTree dom = BTree::from_nodes(std::move(kept));
    std::vector<StageReport> stages{{"drop-dependence", t.size(), dom.size(),
                                     std::to_string(chains) + " unique-max components kept, " +
                                         std::to_string(shrunk) + " restricted to deepest paths"}};
    return {dom, stages};
}

ExtendedMonotoneMap inclusion_map(const BTree& sub, const BTree& whole) {
    std::map<Node, Node> m;
    for (const auto& n : sub.nodes()) m[n] = n;
    std::map<Node, Node> e;
    for (const auto& v : sub.max_nodes()) e[v] = v; // sub maxes are whole maxes here
    return ExtendedMonotoneMap(MonotoneMap(sub, whole, std::move(m)), std::move(e));
}

} // namespace

DropResult drop_dependence_e(const BTree& tree, const std::map<std::pair<Node, Node>, Color>& f) {
    auto [dom, stages] = unique_max_restriction(tree);
    DropResult out;
    out.map = inclusion_map(dom, tree);
    out.stages = std::move(stages);
    for (const auto& s : dom.nodes()) out.node_table[s] = f.at({s, dom.unique_max_extension(s)});
    // re-check the defining identity over E(dom)
    for (const auto& [s, v] : e_pairs(dom))
        if (f.at({out.map.map()(s), out.map.extend(v)}) != out.node_table.at(s))
            throw std::logic_error("dependence drop failed verification");
    return out;
}

DropResult drop_dependence_lambda_e(const TripleColoring& f) {
    auto [dom, stages] = unique_max_restriction(f.tree);
    DropResult out;
    out.map = inclusion_map(dom, f.tree);
    out.stages = std::move(stages);
    for (const auto& [s, t] : lambda_pairs(dom)) out.pair_table[{s, t}] = f.at(s, t, dom.unique_max_extension(t));
    for (const auto& [s, t, v] : lambda_e_triples(dom))
        if (f.at(out.map.map()(s), out.map.map()(t), out.map.extend(v)) != out.pair_table.at({s, t}))
            throw std::logic_error("dependence drop failed verification");
    return out;
}

HomogeneousWitness homogenize_lambda_e(const TripleColoring& coloring, std::size_t n_target) {
    coloring.validate_total();
    DropResult drop = drop_dependence_lambda_e(coloring);
    const BTree& dom1 = drop.map.map().domain();

    // keep a single longest chain for the pair stage
    BTree path = dom1.deepest_path();
    std::vector<StageReport> stages = drop.stages;
    stages.push_back({"chain-restriction", dom1.size(), path.size(), "longest retained chain"});

    PairColoring pc;
    pc.tree = path;
    for (const auto& [s, t] : lambda_pairs(path)) pc.table[{s, t}] = drop.pair_table.at({s, t});

    HomogeneousWitness inner = reduce_colors(pc, std::max<std::size_t>(n_target, 1));
    for (auto& st : inner.stages) stages.push_back(st);

    ExtendedMonotoneMap total = compose(compose(inner.map, inclusion_map(path, dom1)), drop.map);
    HomogeneousWitness out;
    out.map = std::move(total);
    out.color = inner.color;
    out.stages = std::move(stages);
    out.verified = true;
    const BTree& d = out.map.map().domain();
    for (const auto& [s, t, v] : lambda_e_triples(d))
        if (coloring.at(out.map.map()(s), out.map.map()(t), out.map.extend(v)) != out.color) out.verified = false;
    if (!out.verified) throw std::logic_error("lambda-e homogenization failed verification");
    if (d.size() < n_target)
        throw InsufficientDomain("pipeline output smaller than target", out.stages);
    return out;
}

std::pair<MonotoneMap, MonotoneMap> shuffle_maps(const BTree& t) {
    if (t.empty()) throw std::invalid_argument("shuffle needs a nonempty tree");
    BTree two = t_xi_truncate(Ordinal(2), {}); // {(2), (2,1)}
    ProductTree prod(two, t);
    Label l2{Ordinal(2)}, l1{Ordinal(1)};
    std::map<Node, Node> p, q;
    for (const auto& s : t.nodes()) {
        Node full;
        for (std::size_t i = 0; i < s.size(); ++i) {
            full.emplace_back(l2, s[i]);
            full.emplace_back(l1, s[i]);
        }
        q[s] = full;
        full.pop_back(); // p(s) ends after the first node of the final block
        p[s] = std::move(full);
    }
    return {MonotoneMap(t, prod.tree(), std::move(p)), MonotoneMap(t, prod.tree(), std::move(q))};
}

SharpColoring sharp_coloring(std::size_t xi, std::size_t zeta0, std::size_t zeta1, std::size_t cutoff) {
    if (xi == 0 || cutoff == 0) throw std::invalid_argument("sharp_coloring needs xi > 0 and a positive cutoff");
    if (zeta0 + zeta1 != xi) throw std::invalid_argument("invalid decomposition: zeta0 + zeta1 != xi");
    auto powc = [&](std::size_t e) {
        std::size_t r = 1;
        for (std::size_t i = 0; i < e; ++i) r *= cutoff;
        return r;
    };
    SharpColoring out;
    out.bound0 = powc(zeta0);
    out.bound1 = powc(zeta1);
    if (xi == 1) {
        out.tree = t_xi_truncate(Ordinal::omega(), {cutoff});
        Color c = (zeta0 == 1) ? 0 : 1;
        out.coloring.tree = out.tree;
        for (const auto& [s, t] : lambda_pairs(out.tree)) out.coloring.table[{s, t}] = c;
        return out;
    }
    // successor step: recurse on the decremented successor side
    bool dec0 = zeta0 > 0;
    SharpColoring g = dec0 ? sharp_coloring(xi - 1, zeta0 - 1, zeta1, cutoff)
                           : sharp_coloring(xi - 1, zeta0, zeta1 - 1, cutoff);
    Color level_color = dec0 ? 0 : 1;
    std::vector<Node> nodes;
    std::vector<ProductTree> prods;
    for (std::size_t k = 1; k <= cutoff; ++k) {
        prods.emplace_back(g.tree, t_xi_truncate(Ordinal(k), {}));
        for (const auto& n : prods.back().tree().nodes()) nodes.push_back(n);
    }
    out.tree = BTree::from_nodes(std::move(nodes));
    out.coloring.tree = out.tree;
    for (const auto& [s, t] : lambda_pairs(out.tree)) {
        // comparable nodes lie in the same [G, T_k]; same level means same unit
        const ProductTree* prod = nullptr;
        for (const auto& pr : prods)
            if (pr.tree().contains(t)) {
                prod = &pr;
                break;
            }
        if (prod->level_of(s) != prod->level_of(t)) {
            out.coloring.table[{s, t}] = level_color;
        } else {
            const Node& gs = prod->decompose(s).back().left;
            const Node& gt = prod->decompose(t).back().left;
            out.coloring.table[{s, t}] = g.coloring.at(gs, gt);
        }
    }
    return out;
}

} // namespace ordsep
