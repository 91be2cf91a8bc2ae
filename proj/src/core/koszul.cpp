#include "koszul.hpp"

#include <algorithm>

#include "error.hpp"

namespace zk {

int Monomial::degree() const {
    int d = popcount(u_part);
    for (auto e : exps) d += 2 * e;
    return d;
}

MultiDegree Monomial::multidegree() const {
    MultiDegree md = exps;
    for_each_vertex(u_part, [&](int i) { md[i] = static_cast<std::uint16_t>(md[i] + 1); });
    return md;
}

VertexMask Monomial::support() const {
    VertexMask s = 0;
    for (int i = 0; i < static_cast<int>(exps.size()); ++i)
        if (exps[i] > 0) s |= VertexMask(1) << i;
    return s;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
    int n = static_cast<int>(std::max(a.exps.size(), b.exps.size()));
    for (int i = 0; i < n; ++i) {
        int ma = (i < static_cast<int>(a.exps.size()) ? a.exps[i] : 0) + ((a.u_part >> i) & 1);
        int mb = (i < static_cast<int>(b.exps.size()) ? b.exps[i] : 0) + ((b.u_part >> i) & 1);
        if (ma != mb) return ma < mb;
    }
    return a.u_part < b.u_part;
}

bool is_admissible(const SimplicialComplex& k, TorusSubset i, Model model,
                   const Monomial& mono) {
    VertexMask outside = k.full_mask() & ~i;
    if ((mono.u_part & ~outside) != 0) return false;  // u_j exists only for j not in I
    VertexMask supp = mono.support();
    if (!k.is_face(supp)) return false;
    if (model == Model::reduced) {
        if ((mono.u_part & supp) != 0) return false;  // u_j v_j = 0
        for (int j = 0; j < static_cast<int>(mono.exps.size()); ++j)
            if (mono.exps[j] > 1 && !((i >> j) & 1)) return false;  // v_j^2 = 0
    }
    return true;
}

Cochain Cochain::monomial(const SimplicialComplex& k, TorusSubset i, Model model,
                          const Monomial& mono, Int coeff) {
    Cochain c(k, i, model);
    c.add_term(mono, coeff);
    return c;
}

Cochain Cochain::one(const SimplicialComplex& k, TorusSubset i, Model model) {
    Monomial unit;
    unit.exps.assign(k.vertex_count(), 0);
    return monomial(k, i, model, unit, 1);
}

Cochain Cochain::like(const Cochain& c) {
    Cochain r = c;
    r.terms_.clear();
    return r;
}

void Cochain::add_term(const Monomial& mono, const Int& coeff) {
    if (coeff == 0) return;
    if (!is_admissible(*k_, i_, model_, mono)) return;
    auto [it, inserted] = terms_.try_emplace(mono, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

int Cochain::degree() const {
    if (terms_.empty()) return -1;
    return terms_.begin()->first.degree();
}

Cochain Cochain::operator+(const Cochain& o) const {
    Cochain r = *this;
    for (const auto& [mono, c] : o.terms_) r.add_term(mono, c);
    return r;
}

Cochain Cochain::operator-() const {
    Cochain r = *this;
    for (auto& [mono, c] : r.terms_) c = -c;
    return r;
}

Cochain Cochain::scaled(const Int& c) const {
    Cochain r(*k_, i_, model_);
    if (c == 0) return r;
    r.terms_ = terms_;
    for (auto& [mono, coeff] : r.terms_) coeff *= c;
    return r;
}

Cochain differential(const Cochain& c) {
    Cochain out = Cochain::like(c);
    for (const auto& [mono, coeff] : c.terms()) {
        int before = 0;
        for_each_vertex(mono.u_part, [&](int j) {
            Monomial target;
            target.u_part = mono.u_part & ~(VertexMask(1) << j);
            target.exps = mono.exps;
            target.exps[j] = static_cast<std::uint16_t>(target.exps[j] + 1);
            out.add_term(target, (before % 2 == 0) ? coeff : -coeff);
            ++before;
        });
    }
    return out;
}

namespace {

// Sign of interleaving the sorted exterior factors of a before those of b:
// (-1)^{number of pairs (x in a, y in b) with x > y}.
int shuffle_sign(VertexMask a, VertexMask b) {
    int inversions = 0;
    for_each_vertex(b, [&](int y) {
        VertexMask above = a & ~((VertexMask(1) << (y + 1)) - 1);
        inversions += popcount(above);
    });
    return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

Cochain multiply(const Cochain& a, const Cochain& b) {
    bool same_complex = &a.complex() == &b.complex() || a.complex() == b.complex();
    if (!same_complex || a.torus() != b.torus() || a.model() != b.model())
        throw_input("multiply: mismatched ambient (K, I, model)");
    Cochain out = Cochain::like(a);
    int m = a.complex().vertex_count();
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            if (ma.u_part & mb.u_part) continue;  // repeated exterior factor
            Monomial prod;
            prod.u_part = ma.u_part | mb.u_part;
            prod.exps.resize(m);
            for (int i = 0; i < m; ++i)
                prod.exps[i] = static_cast<std::uint16_t>(ma.exps[i] + mb.exps[i]);
            int sign = shuffle_sign(ma.u_part, mb.u_part);
            Int coeff = ca * cb;
            if (sign < 0) coeff = -coeff;
            out.add_term(prod, coeff);
        }
    }
    return out;
}

namespace {

// Exponent vectors with support exactly `supp`, sum `total`, subject to the
// model constraints; appends complete monomials through `emit`.
template <typename Emit>
void enumerate_exponents(const SimplicialComplex& k, TorusSubset i, Model model,
                         VertexMask supp, VertexMask u_part, int total, Emit&& emit) {
    std::vector<int> verts;
    for_each_vertex(supp, [&](int v) { verts.push_back(v); });
    Monomial mono;
    mono.u_part = u_part;
    mono.exps.assign(k.vertex_count(), 0);

    // In the reduced model every vertex of supp outside I carries exponent 1.
    int fixed = 0;
    if (model == Model::reduced) {
        for (int v : verts)
            if (!((i >> v) & 1)) {
                mono.exps[v] = 1;
                ++fixed;
            }
    }

    std::vector<int> rest;
    for (int v : verts)
        if (mono.exps[v] == 0) rest.push_back(v);
    int remaining = total - fixed;
    if (remaining < static_cast<int>(rest.size())) return;  // each needs >= 1

    // Distribute `remaining` over `rest`, each at least 1.
    auto recurse = [&](auto&& self, std::size_t idx, int left) -> void {
        if (idx == rest.size()) {
            if (left == 0) emit(mono);
            return;
        }
        int slots_after = static_cast<int>(rest.size() - idx - 1);
        for (int e = 1; e + slots_after <= left; ++e) {
            mono.exps[rest[idx]] = static_cast<std::uint16_t>(e);
            self(self, idx + 1, left - e);
        }
        mono.exps[rest[idx]] = 0;
    };
    if (rest.empty()) {
        if (remaining == 0) emit(mono);
        return;
    }
    recurse(recurse, 0, remaining);
}

}  // namespace

std::vector<Monomial> basis(const SimplicialComplex& k, TorusSubset i, Model model,
                            int n, int truncation) {
    if ((i & ~k.full_mask()) != 0) throw_input("basis: I is not a vertex subset");
    if (n < 0 || n > truncation) throw_input("basis: need 0 <= n <= truncation");

    std::vector<Monomial> out;
    VertexMask outside = k.full_mask() & ~i;
    // Subsets of V - I as u-parts; iterate submasks.
    VertexMask j = 0;
    for (;;) {
        int uj = popcount(j);
        if (uj <= n && (n - uj) % 2 == 0) {
            int t = (n - uj) / 2;
            for (VertexMask supp : k.faces()) {
                if (model == Model::reduced && (supp & j) != 0) continue;
                if (popcount(supp) > t) continue;
                enumerate_exponents(k, i, model, supp, j, t,
                                    [&](const Monomial& mono) { out.push_back(mono); });
            }
        }
        if (j == outside) break;
        j = (j - outside) & outside;  // next submask
    }
    std::sort(out.begin(), out.end(), MonomialOrder{});
    return out;
}

std::map<MultiDegree, std::vector<Monomial>> multidegree_blocks(
    const SimplicialComplex& k, TorusSubset i, Model model, int n, int truncation) {
    std::map<MultiDegree, std::vector<Monomial>> blocks;
    for (const Monomial& mono : basis(k, i, model, n, truncation))
        blocks[mono.multidegree()].push_back(mono);
    return blocks;
}

}  // namespace zk
