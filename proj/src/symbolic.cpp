#include "ordsep/symbolic.hpp"

#include <stdexcept>

namespace ordsep {

SymbolicTree SymbolicTree::t_xi(Ordinal xi) {
    if (xi.is_zero()) throw std::invalid_argument("T_xi requires xi > 0");
    SymbolicTree t;
    t.kind_ = Kind::txi;
    t.xi_ = std::move(xi);
    return t;
}

SymbolicTree SymbolicTree::product(SymbolicTree left, SymbolicTree right) {
    SymbolicTree t;
    t.kind_ = Kind::product;
    t.left_ = std::make_shared<SymbolicTree>(std::move(left));
    t.right_ = std::make_shared<SymbolicTree>(std::move(right));
    return t;
}

Ordinal SymbolicTree::order() const {
    if (kind_ == Kind::txi) return xi_; // o(T_xi) = xi, checked exhaustively for finite xi
    return multiply(left_->order(), right_->order());
}

namespace {

// Consumes one T_gamma root label; returns the ordinal of the残 subtree.
// (gamma limit: the label selects the branch T_label first.)
bool consume_txi_label(Ordinal& gamma, const Label& lab) {
    if (lab.kind() != Label::Kind::ordinal) return false;
    const Ordinal& a = lab.as_ordinal();
    auto cls = gamma.classify();
    if (cls.kind == Ordinal::Kind::zero) return false;
    if (cls.kind == Ordinal::Kind::limit) {
        if (!(a < gamma)) return false;
        auto acls = a.classify();
        if (acls.kind != Ordinal::Kind::successor) return false;
        gamma = a;
        cls = gamma.classify();
    }
    if (a != gamma) return false;
    gamma = cls.predecessor;
    return true;
}

// Root labels of T_gamma, limit stages truncated to `cutoff` branches.
void txi_roots(const Ordinal& gamma, std::size_t cutoff, std::vector<Label>& out) {
    auto cls = gamma.classify();
    if (cls.kind == Ordinal::Kind::zero) return;
    if (cls.kind == Ordinal::Kind::successor) {
        out.emplace_back(gamma);
        return;
    }
    for (std::size_t k = 1; k <= cutoff; ++k) txi_roots(fundamental_sequence(gamma, k), cutoff, out);
}

} // namespace

bool SymbolicTree::contains(const Node& t) const {
    if (t.empty()) return false;
    if (kind_ == Kind::txi) {
        Ordinal gamma = xi_;
        for (const auto& lab : t)
            if (!consume_txi_label(gamma, lab)) return false;
        return true;
    }
    // product: block decomposition, mirroring the explicit construction
    std::size_t i = 0;
    Node xs_flat; // right labels, one per block
    while (i < t.size()) {
        if (t[i].kind() != Label::Kind::pair) return false;
        Label right = t[i].second();
        Node lefts;
        bool closed = false;
        std::size_t j = i;
        while (j < t.size() && t[j].kind() == Label::Kind::pair && t[j].second() == right) {
            lefts.push_back(t[j].first());
            ++j;
            if (left_->is_max(lefts) && j < t.size()) {
                closed = true;
                break;
            }
        }
        if (!closed) {
            if (j < t.size()) return false;
            if (!left_->contains(lefts)) return false;
        }
        xs_flat.push_back(right);
        i = j;
    }
    return right_->contains(xs_flat);
}

bool SymbolicTree::is_max(const Node& t) const {
    if (!contains(t)) return false;
    if (kind_ == Kind::txi) return t.back().kind() == Label::Kind::ordinal && t.back().as_ordinal() == Ordinal(1);
    // maximal iff regular (last block maximal in the left factor) and the
    // right-label sequence is maximal in the right factor
    std::size_t i = 0;
    Node xs;
    Node last_lefts;
    while (i < t.size()) {
        Label right = t[i].second();
        Node lefts;
        std::size_t j = i;
        bool closed = false;
        while (j < t.size() && t[j].second() == right) {
            lefts.push_back(t[j].first());
            ++j;
            if (left_->is_max(lefts) && j < t.size()) {
                closed = true;
                break;
            }
        }
        xs.push_back(right);
        last_lefts = lefts;
        i = j;
        (void)closed;
    }
    return left_->is_max(last_lefts) && right_->is_max(xs);
}

std::vector<Node> SymbolicTree::children(const Node& t, std::size_t cutoff) const {
    std::vector<Node> out;
    if (kind_ == Kind::txi) {
        Ordinal gamma = xi_;
        for (const auto& lab : t)
            if (!consume_txi_label(gamma, lab)) throw std::invalid_argument("node not in tree");
        std::vector<Label> roots;
        txi_roots(gamma, cutoff, roots);
        for (const auto& r : roots) {
            Node c = t;
            c.push_back(r);
            out.push_back(std::move(c));
        }
        return out;
    }
    if (!t.empty() && !contains(t)) throw std::invalid_argument("node not in tree");
    // extensions of the current (possibly empty) last block
    Node xs;
    Node last_lefts;
    bool regular = true;
    std::size_t i = 0;
    while (i < t.size()) {
        Label right = t[i].second();
        Node lefts;
        std::size_t j = i;
        bool closed = false;
        while (j < t.size() && t[j].second() == right) {
            lefts.push_back(t[j].first());
            ++j;
            if (left_->is_max(lefts) && j < t.size()) {
                closed = true;
                break;
            }
        }
        xs.push_back(right);
        last_lefts = lefts;
        regular = closed || left_->is_max(lefts);
        i = j;
    }
    if (!t.empty() && !regular) {
        // grow the final block inside the left factor, same right label
        for (const auto& c : left_->children(last_lefts, cutoff)) {
            Node n = t;
            n.emplace_back(c.back(), t.back().second());
            out.push_back(std::move(n));
        }
        return out;
    }
    // start a new block: new right label from the right factor, left root
    for (const auto& yc : right_->children(xs, cutoff)) {
        for (const auto& rc : left_->children(Node{}, cutoff)) {
            Node n = t;
            n.emplace_back(rc.back(), yc.back());
            out.push_back(std::move(n));
        }
    }
    return out;
}

} // namespace ordsep
