#include "ordsep/btree.hpp"

#include <algorithm>
#include <stdexcept>

namespace ordsep {

BTree BTree::from_nodes(std::vector<Node> nodes) {
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    BTree t;
    t.nodes_ = std::move(nodes);
    for (const auto& n : t.nodes_) {
        if (n.empty()) throw std::invalid_argument("B-tree nodes are nonempty sequences");
        Node prefix(n.begin(), n.end() - 1);
        if (!prefix.empty() && !t.contains(prefix))
            throw std::invalid_argument("node set not closed under initial segments: missing parent of " +
                                        node_to_string(n));
    }
    return t;
}

BTree BTree::chain(std::size_t n) {
    std::vector<Node> nodes;
    Node cur;
    for (std::size_t i = 1; i <= n; ++i) {
        cur.push_back(Label(static_cast<std::int64_t>(i)));
        nodes.push_back(cur);
    }
    return from_nodes(std::move(nodes));
}

bool BTree::contains(const Node& t) const {
    return std::binary_search(nodes_.begin(), nodes_.end(), t);
}

std::vector<Node> BTree::max_nodes() const {
    std::vector<bool> has_child(nodes_.size(), false);
    for (const auto& n : nodes_) {
        if (n.size() < 2) continue;
        Node parent(n.begin(), n.end() - 1);
        auto it = std::lower_bound(nodes_.begin(), nodes_.end(), parent);
        has_child[static_cast<std::size_t>(it - nodes_.begin())] = true;
    }
    std::vector<Node> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (!has_child[i]) out.push_back(nodes_[i]);
    return out;
}

bool BTree::is_max(const Node& t) const {
    if (!contains(t)) return false;
    Node child = t;
    // any node strictly extending t sorts in (t, successor-of-extensions);
    // cheap scan over the contiguous extension range
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
    return it == nodes_.end() || !is_proper_prefix(t, *it);
}

BTree BTree::derived() const {
    auto maxes = max_nodes();
    std::vector<Node> rest;
    for (const auto& n : nodes_)
        if (!std::binary_search(maxes.begin(), maxes.end(), n)) rest.push_back(n);
    BTree t;
    t.nodes_ = std::move(rest); // closure preserved: removed nodes were maximal
    return t;
}

BTree BTree::iterated_derived(std::size_t k) const {
    BTree t = *this;
    for (std::size_t i = 0; i < k && !t.empty(); ++i) t = t.derived();
    return t;
}

std::size_t BTree::order_nat() const {
    BTree t = *this;
    std::size_t k = 0;
    while (!t.empty()) {
        t = t.derived();
        ++k;
    }
    return k;
}

Ordinal BTree::order() const { return Ordinal(order_nat()); }

std::size_t BTree::residual_rank(const Node& t) const {
    std::size_t best = 1;
    for (const auto& u : nodes_)
        if (is_proper_prefix(t, u)) best = std::max(best, u.size() - t.size() + 1);
    return best;
}

bool BTree::has_unique_max_extensions() const {
    auto maxes = max_nodes();
    for (const auto& n : nodes_) {
        std::size_t cnt = 0;
        for (const auto& m : maxes)
            if (is_prefix(n, m)) ++cnt;
        if (cnt != 1) return false;
    }
    return true;
}

Node BTree::unique_max_extension(const Node& t) const {
    auto maxes = max_nodes();
    std::vector<Node> hits;
    for (const auto& m : maxes)
        if (is_prefix(t, m)) hits.push_back(m);
    if (hits.size() != 1) throw std::logic_error("node lacks a unique maximal extension");
    return hits[0];
}

Node BTree::least_max_extension(const Node& t) const {
    auto maxes = max_nodes();
    for (const auto& m : maxes) // maxes sorted
        if (is_prefix(t, m)) return m;
    throw std::logic_error("no maximal extension found");
}

BTree BTree::deepest_path() const {
    if (empty()) return {};
    Node best;
    for (const auto& n : nodes_)
        if (n.size() > best.size()) best = n;
    std::vector<Node> path;
    for (std::size_t len = 1; len <= best.size(); ++len) path.emplace_back(best.begin(), best.begin() + len);
    return from_nodes(std::move(path));
}

std::vector<std::pair<Node, Node>> lambda_pairs(const BTree& t) {
    std::vector<std::pair<Node, Node>> out;
    for (const auto& s : t.nodes())
        for (const auto& u : t.nodes())
            if (is_proper_prefix(s, u)) out.emplace_back(s, u);
    return out;
}

std::vector<std::tuple<Node, Node, Node>> lambda_e_triples(const BTree& t) {
    std::vector<std::tuple<Node, Node, Node>> out;
    auto maxes = t.max_nodes();
    for (const auto& s : t.nodes())
        for (const auto& u : t.nodes())
            if (is_proper_prefix(s, u))
                for (const auto& v : maxes)
                    if (is_prefix(u, v)) out.emplace_back(s, u, v);
    return out;
}

std::vector<std::pair<Node, Node>> e_pairs(const BTree& t) {
    std::vector<std::pair<Node, Node>> out;
    for (const auto& s : t.nodes())
        for (const auto& v : t.max_nodes())
            if (is_prefix(s, v)) out.emplace_back(s, v);
    return out;
}

Ordinal fundamental_sequence(const Ordinal& lambda, std::size_t k) {
    if (lambda.classify().kind != Ordinal::Kind::limit)
        throw std::invalid_argument("fundamental sequence needs a limit ordinal");
    auto terms = lambda.terms();
    Ordinal::Term last = terms.back();
    if (last.coefficient == 1)
        terms.pop_back();
    else
        terms.back().coefficient -= 1;
    Ordinal rest = Ordinal::from_terms(std::move(terms));
    auto cls = last.exponent.classify();
    if (cls.kind == Ordinal::Kind::successor)
        return add(rest, Ordinal::omega_power(cls.predecessor, BigInt(k)));
    return add(rest, omega_power(fundamental_sequence(last.exponent, k)));
}

namespace {

void build_t_xi(const Ordinal& xi, std::size_t depth, const std::vector<std::size_t>& cutoffs,
                std::vector<Node>& out) {
    auto cls = xi.classify();
    if (cls.kind == Ordinal::Kind::zero) throw std::invalid_argument("T_xi requires xi > 0");
    if (cls.kind == Ordinal::Kind::successor) {
        Node root{Label(xi)};
        out.push_back(root);
        if (!cls.predecessor.is_zero()) {
            std::vector<Node> sub;
            build_t_xi(cls.predecessor, depth, cutoffs, sub);
            for (auto& t : sub) {
                Node n = root;
                n.insert(n.end(), t.begin(), t.end());
                out.push_back(std::move(n));
            }
        }
        return;
    }
    std::size_t c = 1;
    if (!cutoffs.empty()) c = cutoffs[std::min(depth, cutoffs.size() - 1)];
    for (std::size_t k = 1; k <= c; ++k) build_t_xi(fundamental_sequence(xi, k), depth + 1, cutoffs, out);
}

} // namespace

BTree t_xi_truncate(const Ordinal& xi, const std::vector<std::size_t>& cutoffs) {
    std::vector<Node> nodes;
    build_t_xi(xi, 0, cutoffs, nodes);
    return BTree::from_nodes(std::move(nodes));
}

ProductTree::ProductTree(const BTree& t0, const BTree& t1) : t0_(t0), t1_(t1) {
    if (t0.empty() || t1.empty()) throw std::invalid_argument("tree product requires nonempty factors");
    auto maxes = t0.max_nodes();
    std::vector<Node> out;
    // one member per choice of (x_1..x_k) in T1, s_1..s_{k-1} in MAX(T0), s_k in T0
    for (const auto& xs : t1.nodes()) {
        std::size_t k = xs.size();
        std::vector<std::size_t> pick(k, 0);
        for (;;) {
            Node flat;
            for (std::size_t i = 0; i < k; ++i) {
                const Node& s = (i + 1 < k) ? maxes[pick[i]] : t0.nodes()[pick[i]];
                for (const auto& lab : s) flat.emplace_back(lab, xs[i]);
            }
            out.push_back(std::move(flat));
            std::size_t j = k;
            bool done = false;
            while (j > 0) {
                --j;
                std::size_t limit = (j + 1 < k) ? maxes.size() : t0.nodes().size();
                if (pick[j] + 1 < limit) {
                    ++pick[j];
                    for (std::size_t l = j + 1; l < k; ++l) pick[l] = 0;
                    break;
                }
                if (j == 0) done = true;
            }
            if (done) break;
        }
    }
    tree_ = BTree::from_nodes(std::move(out));
}

std::vector<ProductTree::Block> ProductTree::decompose(const Node& t) const {
    std::vector<Block> blocks;
    std::size_t i = 0;
    while (i < t.size()) {
        if (t[i].kind() != Label::Kind::pair) throw std::invalid_argument("not a product node");
        Label right = t[i].second();
        Node lefts;
        std::size_t j = i;
        bool closed = false;
        while (j < t.size() && t[j].kind() == Label::Kind::pair && t[j].second() == right) {
            lefts.push_back(t[j].first());
            ++j;
            if (t0_.is_max(lefts) && j < t.size()) { // non-final blocks end at the unique maximal hit
                closed = true;
                break;
            }
        }
        if (!closed) {
            if (j < t.size()) throw std::invalid_argument("malformed product node: non-final block not maximal");
            if (!t0_.contains(lefts)) throw std::invalid_argument("malformed product node: final block not in T0");
        }
        blocks.push_back(Block{std::move(lefts), right});
        i = j;
    }
    return blocks;
}

bool ProductTree::is_regular(const Node& t) const {
    auto blocks = decompose(t);
    return t0_.is_max(blocks.back().left);
}

std::size_t ProductTree::level_of(const Node& t) const { return decompose(t).size(); }

Node ProductTree::unit_of(const Node& t) const {
    auto blocks = decompose(t);
    Node prefix;
    for (std::size_t i = 0; i + 1 < blocks.size(); ++i)
        for (const auto& lab : blocks[i].left) prefix.emplace_back(lab, blocks[i].right);
    return prefix;
}

std::vector<Node> ProductTree::unit_beneath(const Node& r) const {
    std::vector<Node> out;
    std::size_t target_level = r.empty() ? 1 : level_of(r) + 1;
    for (const auto& t : tree_.nodes()) {
        if (r.empty()) {
            if (level_of(t) == 1) out.push_back(t);
        } else if (is_proper_prefix(r, t) && level_of(t) == target_level && unit_of(t) == r) {
            out.push_back(t);
        }
    }
    return out;
}

BTree product(const BTree& t0, const BTree& t1) { return ProductTree(t0, t1).tree(); }

MonotoneMap::MonotoneMap(BTree domain, BTree codomain, std::map<Node, Node> assignment)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), map_(std::move(assignment)) {
    if (!verify()) throw std::invalid_argument("assignment is not a monotone map");
}

MonotoneMap MonotoneMap::identity(const BTree& t) {
    std::map<Node, Node> m;
    for (const auto& n : t.nodes()) m[n] = n;
    return MonotoneMap(t, t, std::move(m));
}

const Node& MonotoneMap::operator()(const Node& t) const {
    auto it = map_.find(t);
    if (it == map_.end()) throw std::out_of_range("node not in map domain");
    return it->second;
}

bool MonotoneMap::verify() const {
    for (const auto& n : domain_.nodes()) {
        auto it = map_.find(n);
        if (it == map_.end() || !codomain_.contains(it->second)) return false;
    }
    for (const auto& [s, u] : lambda_pairs(domain_))
        if (!is_proper_prefix(map_.at(s), map_.at(u))) return false;
    return true;
}

MonotoneMap compose(const MonotoneMap& inner, const MonotoneMap& outer) {
    std::map<Node, Node> m;
    for (const auto& n : inner.domain().nodes()) m[n] = outer(inner(n));
    return MonotoneMap(inner.domain(), outer.codomain(), std::move(m));
}

std::optional<MonotoneMap> find_monotone_map(const BTree& t0, const BTree& t1) {
    if (t0.empty()) return MonotoneMap(t0, t1, {});
    if (t1.empty() || t0.order_nat() > t1.order_nat()) return std::nullopt;
    // residual ranks, parents before children in the sorted node order
    std::map<Node, std::size_t> r0, r1;
    for (const auto& n : t0.nodes()) r0[n] = t0.residual_rank(n);
    for (const auto& n : t1.nodes()) r1[n] = t1.residual_rank(n);
    std::map<Node, Node> theta;
    for (const auto& t : t0.nodes()) {
        const Node* anchor = nullptr;
        if (t.size() > 1) {
            Node parent(t.begin(), t.end() - 1);
            anchor = &theta.at(parent);
        }
        const Node* pick = nullptr;
        for (const auto& u : t1.nodes()) {
            if (anchor && !is_proper_prefix(*anchor, u)) continue;
            if (r1.at(u) >= r0.at(t)) {
                pick = &u;
                break;
            }
        }
        if (!pick) return std::nullopt; // unreachable when orders compare, kept defensive
        theta[t] = *pick;
    }
    return MonotoneMap(t0, t1, std::move(theta));
}

ExtendedMonotoneMap::ExtendedMonotoneMap(MonotoneMap map, std::map<Node, Node> extension)
    : map_(std::move(map)), ext_(std::move(extension)) {
    if (!verify()) throw std::invalid_argument("extension does not extend the map");
}

ExtendedMonotoneMap ExtendedMonotoneMap::identity(const BTree& t) {
    std::map<Node, Node> e;
    for (const auto& m : t.max_nodes()) e[m] = m;
    return ExtendedMonotoneMap(MonotoneMap::identity(t), std::move(e));
}

const Node& ExtendedMonotoneMap::extend(const Node& max_node) const {
    auto it = ext_.find(max_node);
    if (it == ext_.end()) throw std::out_of_range("node not in extension domain");
    return it->second;
}

bool ExtendedMonotoneMap::verify() const {
    if (!map_.verify()) return false;
    for (const auto& m : map_.domain().max_nodes()) {
        auto it = ext_.find(m);
        if (it == ext_.end()) return false;
        if (!map_.codomain().is_max(it->second)) return false;
        if (!is_prefix(map_(m), it->second)) return false;
    }
    return true;
}

ExtendedMonotoneMap extend(const MonotoneMap& theta) {
    std::map<Node, Node> e;
    for (const auto& m : theta.domain().max_nodes()) e[m] = theta.codomain().least_max_extension(theta(m));
    return ExtendedMonotoneMap(theta, std::move(e));
}

ExtendedMonotoneMap compose(const ExtendedMonotoneMap& inner, const ExtendedMonotoneMap& outer) {
    MonotoneMap theta = compose(inner.map(), outer.map());
    std::map<Node, Node> e;
    for (const auto& m : inner.map().domain().max_nodes()) e[m] = outer.extend(inner.extend(m));
    return ExtendedMonotoneMap(std::move(theta), std::move(e));
}

std::pair<MonotoneMap, MonotoneMap> canonical_product_maps(const Ordinal& xi, const Ordinal& zeta,
                                                           const std::vector<std::size_t>& cutoffs) {
    BTree txi = t_xi_truncate(xi, cutoffs);
    BTree tzeta = t_xi_truncate(zeta, cutoffs);
    BTree prod = product(txi, tzeta);
    BTree tprod = t_xi_truncate(multiply(xi, zeta), cutoffs);
    if (prod.order_nat() != tprod.order_nat())
        throw std::runtime_error("truncation too small to realize equal orders: [T_xi,T_zeta] has order " +
                                 std::to_string(prod.order_nat()) + ", T_{xi zeta} has order " +
                                 std::to_string(tprod.order_nat()));
    auto theta1 = find_monotone_map(prod, tprod);
    auto theta2 = find_monotone_map(tprod, prod);
    if (!theta1 || !theta2) throw std::logic_error("equal orders must admit maps both ways");
    return {std::move(*theta1), std::move(*theta2)};
}

} // namespace ordsep
