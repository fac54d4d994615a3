#include "ordsep/james.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace ordsep {

bool CsCertificate::verify(const Body& k, const Rational& eps, bool require_weights) const {
    for (const auto& sp : splits) {
        if (sp.m < 1 || sp.m >= sequence.size()) return false;
        if (!sp.weights.empty()) {
            Rational total = 0;
            Vec built(k.dim(), Rational(0));
            if (sp.weights.size() != k.vertices().size()) return false;
            for (std::size_t i = 0; i < sp.weights.size(); ++i) {
                if (sp.weights[i] < 0) return false;
                total += sp.weights[i];
                built = vec_add(built, vec_scale(sp.weights[i], k.vertices()[i]));
            }
            if (total != 1 || built != sp.functional) return false;
        } else if (require_weights) {
            return false;
        }
        Rational margin;
        bool first = true;
        for (std::size_t i = 0; i < sp.m; ++i) {
            for (std::size_t j = sp.m; j < sequence.size(); ++j) {
                Rational v = dot(sp.functional, vec_sub(sequence[i], sequence[j]));
                if (first || v < margin) margin = v;
                first = false;
            }
        }
        if (first || margin != sp.margin || margin < eps) return false;
    }
    return true;
}

CsCheck is_cs(const Body& k, const Rational& eps, const std::vector<Vec>& seq) {
    if (eps <= 0) throw std::invalid_argument("eps must be positive");
    CsCheck out;
    out.certificate.sequence = seq;
    for (std::size_t m = 1; m < seq.size(); ++m) {
        std::vector<Vec> prefix(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(m));
        std::vector<Vec> suffix(seq.begin() + static_cast<std::ptrdiff_t>(m), seq.end());
        Rational primal = hull_distance(k, prefix, suffix);
        SplitMargin dual = best_split_margin(k, prefix, suffix);
        if (primal != dual.margin)
            throw std::logic_error("primal/dual disagreement: hull distance " + to_string(primal) +
                                   " vs margin " + to_string(dual.margin));
        if (primal < eps) {
            out.is_cs = false;
            out.failed_split = m;
            out.certificate.splits.clear();
            return out;
        }
        out.certificate.splits.push_back({m, std::move(dual.functional), std::move(dual.weights), dual.margin});
    }
    out.is_cs = true;
    return out;
}

CsEnumTree cs_tree(const Body& k, const Rational& eps, const std::vector<Vec>& points,
                   const SpaceNorm& ball, std::size_t depth_cap) {
    for (const auto& p : points)
        if (!ball.in_ball(p)) throw std::invalid_argument("candidate point outside the unit ball");
    CsEnumTree out;
    std::vector<Node> nodes;
    std::vector<std::size_t> idx;
    std::function<void()> grow = [&]() {
        std::vector<Vec> seq;
        for (auto i : idx) seq.push_back(points[i - 1]);
        for (std::size_t i = 1; i <= points.size(); ++i) {
            seq.push_back(points[i - 1]);
            if (is_cs(k, eps, seq).is_cs) {
                if (idx.size() >= depth_cap) {
                    out.depth_capped = true;
                    seq.pop_back();
                    continue;
                }
                idx.push_back(i);
                Node n;
                for (auto j : idx) n.emplace_back(static_cast<std::int64_t>(j));
                nodes.push_back(std::move(n));
                grow();
                idx.pop_back();
            }
            seq.pop_back();
        }
    };
    grow();
    out.tree = BTree::from_nodes(std::move(nodes));
    out.order_with_root = out.tree.order_nat() + 1;
    return out;
}

Body operator_body(const Matrix& a, const Body& dual_ball) {
    std::vector<Vec> vs;
    for (const auto& v : dual_ball.vertices()) vs.push_back(a.apply_transpose(v));
    return Body::from_vertices(a.cols, std::move(vs));
}

IdealReport ideal_checks(const Matrix& a, const Matrix& b_compose, const Matrix& b_perturb,
                         const SpaceNorm& domain_norm, const Body& dual_ball, const Rational& eps,
                         const Rational& delta1, const std::vector<Vec>& points) {
    IdealReport rep;
    Body a_body = operator_body(a, dual_ball);

    // composition: nodes of the (AB)-tree map under B into the A-tree
    {
        Rational bnorm = operator_norm(b_compose, domain_norm, domain_norm.dual_ball());
        if (bnorm > 1) throw std::invalid_argument("composition factor must have norm <= 1");
        Matrix ab = matmul(a, b_compose);
        Body ab_body = operator_body(ab, dual_ball);
        CsEnumTree jt = cs_tree(ab_body, eps, points, domain_norm);
        for (const auto& node : jt.tree.nodes()) {
            if (!jt.tree.is_max(node)) continue; // prefixes covered by their maxes
            std::vector<Vec> image;
            for (const auto& lab : node) image.push_back(b_compose.apply(points[static_cast<std::size_t>(lab.as_int()) - 1]));
            ++rep.composition_nodes;
            for (const auto& x : image)
                if (!domain_norm.in_ball(x)) rep.violations.push_back("composition image left the ball");
            if (!is_cs(a_body, eps, image).is_cs) {
                rep.composition_ok = false;
                rep.violations.push_back("composition inclusion failed at " + node_to_string(node));
            }
        }
    }

    // perturbation: J(A, eps) inside J(B, eps - 2 delta1)
    {
        rep.op_distance = operator_norm(matsub(a, b_perturb), domain_norm, dual_ball);
        if (rep.op_distance >= delta1) throw std::invalid_argument("perturbation check needs ||A - B|| < delta1");
        Rational delta2 = eps - 2 * delta1;
        if (delta2 <= 0) throw std::invalid_argument("eps - 2 delta1 must be positive");
        Body b_body = operator_body(b_perturb, dual_ball);
        CsEnumTree jt = cs_tree(a_body, eps, points, domain_norm);
        for (const auto& node : jt.tree.nodes()) {
            std::vector<Vec> seq;
            for (const auto& lab : node) seq.push_back(points[static_cast<std::size_t>(lab.as_int()) - 1]);
            ++rep.perturbation_nodes;
            if (!is_cs(b_body, delta2, seq).is_cs) {
                rep.perturbation_ok = false;
                rep.violations.push_back("perturbation inclusion failed at " + node_to_string(node));
            }
        }
    }
    return rep;
}

namespace {

// || sum_i sigma_i u_i A x_i ||_Y minimized over the l1-sphere facet of the
// sign pattern sigma; the lower estimate holds iff every facet optimum
// reaches the threshold.
Rational facet_min_norm(const std::vector<Vec>& images, const std::vector<int>& sigma,
                        const SpaceNorm& y_norm) {
    std::size_t n = images.size();
    std::size_t nv = n + 1; // u_1..u_n, t
    std::vector<Rational> obj(nv, Rational(0));
    obj[n] = -1; // maximize -t
    std::vector<LpConstraint> cons;
    for (const auto& f : y_norm.functionals()) {
        for (int sgn : {+1, -1}) {
            LpConstraint c;
            c.coeffs.assign(nv, Rational(0));
            for (std::size_t i = 0; i < n; ++i) c.coeffs[i] = Rational(sgn * sigma[i]) * dot(f, images[i]);
            c.coeffs[n] = -1;
            c.rel = Rel::le;
            c.rhs = 0;
            cons.push_back(std::move(c));
        }
    }
    LpConstraint sum;
    sum.coeffs.assign(nv, Rational(1));
    sum.coeffs[n] = 0;
    sum.rel = Rel::eq;
    sum.rhs = 1;
    cons.push_back(std::move(sum));
    std::vector<VarSign> signs(nv, VarSign::nonneg);
    signs[n] = VarSign::free_var;
    auto r = solve_lp(obj, cons, signs);
    if (r.status != LpStatus::optimal) throw std::logic_error("facet LP must be solvable");
    return -r.objective;
}

bool lower_l1_estimate(const std::vector<Vec>& images, const Rational& threshold, const SpaceNorm& y_norm) {
    std::size_t n = images.size();
    if (n == 0) return true;
    std::vector<int> sigma(n, +1); // sigma_1 fixed + by symmetry of the norm
    std::function<bool(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) return facet_min_norm(images, sigma, y_norm) >= threshold;
        for (int s : {+1, -1}) {
            sigma[i] = s;
            if (!rec(i + 1)) return false;
        }
        return true;
    };
    return rec(1);
}

} // namespace

L1TreeResult l1_tree(const Matrix& a, const Rational& c, const std::vector<Vec>& points,
                     const SpaceNorm& y_norm, const SpaceNorm& x_ball) {
    if (c < 1) throw std::invalid_argument("the lower-estimate constant must be >= 1");
    for (const auto& p : points)
        if (!x_ball.in_ball(p)) throw std::invalid_argument("candidate point outside the unit ball");
    Rational threshold = 1 / c;
    L1TreeResult out;
    std::vector<Node> nodes;
    std::vector<std::size_t> idx;
    std::function<void()> grow = [&]() {
        std::vector<Vec> images;
        for (auto i : idx) images.push_back(a.apply(points[i - 1]));
        for (std::size_t i = 1; i <= points.size(); ++i) {
            images.push_back(a.apply(points[i - 1]));
            if (lower_l1_estimate(images, threshold, y_norm)) {
                idx.push_back(i);
                Node n;
                for (auto j : idx) n.emplace_back(static_cast<std::int64_t>(j));
                nodes.push_back(std::move(n));
                grow();
                idx.pop_back();
            }
            images.pop_back();
        }
    };
    grow();
    out.tree = BTree::from_nodes(std::move(nodes));
    out.order_with_root = out.tree.order_nat() + 1;

    Body ab = operator_body(a, y_norm.dual_ball());
    for (const auto& node : out.tree.nodes()) {
        std::vector<Vec> seq;
        for (const auto& lab : node) seq.push_back(points[static_cast<std::size_t>(lab.as_int()) - 1]);
        if (!is_cs(ab, threshold, seq).is_cs) {
            out.inclusion_ok = false;
            out.violations.push_back("T1 node not in J at " + node_to_string(node));
        }
    }
    return out;
}

Rational jt_norm_squared(const BTree& tree, const std::map<Node, Rational>& v) {
    std::size_t n = tree.size();
    if (n == 0) return Rational(0);
    if (n > 24) throw std::invalid_argument("jt_norm_squared supports trees up to 24 nodes");
    const auto& nodes = tree.nodes();
    auto id_of = [&](const Node& t) {
        return static_cast<std::size_t>(
            std::lower_bound(nodes.begin(), nodes.end(), t) - nodes.begin());
    };
    auto value = [&](const Node& t) {
        auto it = v.find(t);
        return it == v.end() ? Rational(0) : it->second;
    };
    // segments with both endpoints in the tree; zero-sum segments never help
    struct Seg {
        std::uint32_t mask;
        Rational sum;
    };
    std::vector<Seg> segs;
    for (const auto& u : nodes) {
        for (std::size_t lo = 1; lo <= u.size(); ++lo) {
            Node s(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(lo));
            std::uint32_t mask = 0;
            Rational sum = 0;
            for (std::size_t len = lo; len <= u.size(); ++len) {
                Node mid(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(len));
                mask |= (std::uint32_t{1} << id_of(mid));
                sum += value(mid);
                if (sum != 0) segs.push_back({mask, sum});
            }
        }
    }
    // dedupe identical masks keeping the best |sum| is unsound (sums differ by
    // construction only when masks differ), but identical (mask, sum) repeats
    // are possible via different endpoint enumerations; harmless for a max.
    std::map<std::pair<std::size_t, std::uint32_t>, Rational> memo;
    std::function<Rational(std::size_t, std::uint32_t)> best = [&](std::size_t i, std::uint32_t used) {
        if (i == segs.size()) return Rational(0);
        auto key = std::make_pair(i, used);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        Rational r = best(i + 1, used);
        if ((segs[i].mask & used) == 0) {
            Rational take = segs[i].sum * segs[i].sum + best(i + 1, used | segs[i].mask);
            if (take > r) r = take;
        }
        memo[key] = r;
        return r;
    };
    return best(0, 0);
}

std::size_t CsTreeFamily::point_dim() const {
    return points.empty() ? 0 : points.begin()->second.size();
}

FamilyVerification verify_family(const CsTreeFamily& w, const Rational& eps, const Body* k,
                                 bool check_weights) {
    FamilyVerification out;
    out.min_margin = 0;
    for (const auto& v : w.index.max_nodes()) {
        std::vector<Vec> seq;
        for (std::size_t len = 1; len <= v.size(); ++len) {
            Node p(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(len));
            auto it = w.points.find(p);
            if (it == w.points.end()) {
                out.ok = false;
                out.violations.push_back("missing point at " + node_to_string(p));
                continue;
            }
            seq.push_back(it->second);
        }
        for (std::size_t m = 1; m < v.size(); ++m) {
            Node t(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m));
            auto key = std::make_pair(t, v);
            auto it = w.certificates.find(key);
            if (it == w.certificates.end()) {
                out.ok = false;
                out.violations.push_back("missing certificate for split " + node_to_string(t) + " of " +
                                         node_to_string(v));
                continue;
            }
            const Vec& f = it->second;
            if (k && check_weights) {
                auto wit = w.weights.find(key);
                if (wit == w.weights.end()) {
                    out.ok = false;
                    out.violations.push_back("missing weights at " + node_to_string(t));
                } else {
                    Rational total = 0;
                    Vec built(k->dim(), Rational(0));
                    bool bad = wit->second.size() != k->vertices().size();
                    for (std::size_t i = 0; !bad && i < wit->second.size(); ++i) {
                        if (wit->second[i] < 0) bad = true;
                        total += wit->second[i];
                        built = vec_add(built, vec_scale(wit->second[i], k->vertices()[i]));
                    }
                    if (bad || total != 1 || built != f) {
                        out.ok = false;
                        out.violations.push_back("invalid weights at " + node_to_string(t));
                    }
                }
            }
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = m; j < v.size(); ++j) {
                    Rational val = dot(f, vec_sub(seq[i], seq[j]));
                    if (!out.any_margin || val < out.min_margin) out.min_margin = val;
                    out.any_margin = true;
                    if (val < eps) {
                        out.ok = false;
                        out.violations.push_back("margin " + to_string(val) + " < eps at split " +
                                                 std::to_string(m) + " of " + node_to_string(v));
                    }
                }
            }
        }
        if (k && !is_cs(*k, eps, seq).is_cs) {
            out.ok = false;
            out.violations.push_back("is_cs rejects the path to " + node_to_string(v));
        }
    }
    return out;
}

CsTreeFamily jt_witness(const BTree& t) {
    CsTreeFamily fam;
    fam.index = t;
    const auto& nodes = t.nodes();
    auto id_of = [&](const Node& u) {
        return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), u) - nodes.begin());
    };
    for (const auto& u : nodes) {
        Vec e(nodes.size(), Rational(0));
        e[id_of(u)] = 1;
        fam.points[u] = std::move(e);
    }
    for (const auto& v : t.max_nodes()) {
        for (std::size_t m = 1; m < v.size(); ++m) {
            Node split(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m));
            // segment functional through (v|_1, ..., v|_m): dual norm 1,
            // since a single segment realizes it
            Vec f(nodes.size(), Rational(0));
            for (std::size_t len = 1; len <= m; ++len)
                f[id_of(Node(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(len)))] = 1;
            fam.certificates[{split, v}] = std::move(f);
        }
    }
    return fam;
}

CodingResult coding_tree(const Matrix& a, const Body& dual_ball, const std::vector<Vec>& points,
                         std::size_t kmax, const SpaceNorm& ball, std::size_t depth_cap) {
    if (kmax == 0) throw std::invalid_argument("kmax must be positive");
    Body body = operator_body(a, dual_ball);
    CodingResult out;
    std::vector<Node> nodes;
    std::size_t best = 0;
    for (std::size_t k = 1; k <= kmax; ++k) {
        CsEnumTree sub = cs_tree(body, Rational(1, k), points, ball, depth_cap);
        out.capped = out.capped || sub.depth_capped;
        best = std::max(best, sub.order_with_root);
        Node root{Label(static_cast<std::int64_t>(k))};
        nodes.push_back(root);
        for (const auto& t : sub.tree.nodes()) {
            Node n = root;
            n.insert(n.end(), t.begin(), t.end());
            nodes.push_back(std::move(n));
        }
    }
    out.tree = BTree::from_nodes(std::move(nodes));
    out.order_with_root = out.tree.order_nat() + 1;
    out.formula_rhs = 1 + best;
    return out;
}

} // namespace ordsep
