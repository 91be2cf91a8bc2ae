#include "equivariant.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <thread>
#include <unordered_map>

#include "error.hpp"

namespace zk {

namespace {

constexpr long kInstanceCap = 8'000'000;  // resource guard on table size

// Exponent vector packed for ordering/hashing; lexicographic order agrees
// with the multidegree order on monomials.
struct MuKey {
    std::array<std::uint8_t, kMaxVertices> e{};
    auto operator<=>(const MuKey&) const = default;
};

MultiDegree mu_to_multidegree(const MuKey& mu, int m) {
    MultiDegree md(m, 0);
    for (int i = 0; i < m; ++i) md[i] = mu.e[i];
    return md;
}

// Structural key of a block: `required` vertices sit in every monomial's
// support; a u-choice at a vertex of `supp_toggles` removes it from the
// support, at a vertex of `free_toggles` keeps it (exponent >= 2; full model
// only). The block's cochain complex is independent of the actual exponents,
// so one block serves every multidegree instance sharing the key.
struct BlockKey {
    VertexMask required = 0, supp_toggles = 0, free_toggles = 0;
    bool operator==(const BlockKey&) const = default;
};

struct BlockKeyHash {
    std::size_t operator()(const BlockKey& k) const {
        std::size_t h = k.required;
        h = h * 0x9e3779b97f4a7c15ULL ^ k.supp_toggles;
        h = h * 0x9e3779b97f4a7c15ULL ^ k.free_toggles;
        return h;
    }
};

// Levels are indexed by |J| (the u-set); level l sits in cohomological degree
// 2 * weight - l for an instance of total exponent weight.
class Block {
public:
    Block(const SimplicialComplex& k, BlockKey key) : key_(key) {
        VertexMask toggles = key.supp_toggles | key.free_toggles;
        int t = popcount(toggles);
        basis_.assign(t + 1, {});
        VertexMask j = 0;
        for (;;) {
            if (k.is_face(key.required | (key.supp_toggles & ~j)))
                basis_[popcount(j)].push_back(j);
            if (j == toggles) break;
            j = (j - toggles) & toggles;  // ascending submask enumeration
        }

        // d[l]: level l -> level l-1 (degree raises by one).
        std::vector<IntMatrix> d(t + 2);
        d[0] = IntMatrix(0, static_cast<int>(basis_[0].size()));
        d[t + 1] = IntMatrix(static_cast<int>(basis_[t].size()), 0);
        for (int l = 1; l <= t; ++l) {
            IntMatrix m(static_cast<int>(basis_[l - 1].size()),
                        static_cast<int>(basis_[l].size()));
            for (int c = 0; c < static_cast<int>(basis_[l].size()); ++c) {
                VertexMask jm = basis_[l][c];
                int before = 0;
                for_each_vertex(jm, [&](int v) {
                    VertexMask target = jm & ~(VertexMask(1) << v);
                    const auto& lb = basis_[l - 1];
                    auto it = std::lower_bound(lb.begin(), lb.end(), target);
                    if (it != lb.end() && *it == target)
                        m.at(static_cast<int>(it - lb.begin()), c) =
                            (before % 2 == 0) ? 1 : -1;
                    ++before;
                });
            }
            d[l] = std::move(m);
        }
        cohom_.reserve(t + 1);
        for (int l = 0; l <= t; ++l) cohom_.emplace_back(d[l + 1], d[l]);
    }

    const BlockKey& key() const { return key_; }
    int levels() const { return static_cast<int>(basis_.size()); }
    const std::vector<VertexMask>& level_basis(int l) const { return basis_[l]; }
    const CohomologyStep& level_cohomology(int l) const { return cohom_[l]; }

private:
    BlockKey key_;
    std::vector<std::vector<VertexMask>> basis_;
    std::vector<CohomologyStep> cohom_;
};

struct Instance {
    MuKey mu;
    const Block* block = nullptr;
    int level = 0;
    long first_free = 0;     // generator offsets within the degree
    long first_torsion = 0;

    long free_count() const { return block->level_cohomology(level).free_rank(); }
    long torsion_count() const {
        return static_cast<long>(block->level_cohomology(level).torsion().size());
    }
};

struct DegreeData {
    long free_rank = 0;
    long torsion_total = 0;
    std::vector<Instance> instances;    // multidegree-ascending
    std::vector<Int> torsion_orders;    // generator order (per torsion generator)
    std::vector<Int> torsion_sorted;    // ascending, for reporting
};

}  // namespace

struct EquivariantCohomology::Impl {
    std::shared_ptr<const SimplicialComplex> k;
    TorusSubset torus = 0;
    int truncation = 0;
    Model model = Model::reduced;

    std::unordered_map<BlockKey, std::unique_ptr<Block>, BlockKeyHash> blocks;
    std::vector<DegreeData> degrees;
    long instance_count = 0;

    const Block& block(BlockKey key) {
        auto it = blocks.find(key);
        if (it == blocks.end())
            it = blocks.emplace(key, std::make_unique<Block>(*k, key)).first;
        return *it->second;
    }

    const Block* find_block(BlockKey key) const {
        auto it = blocks.find(key);
        return it == blocks.end() ? nullptr : it->second.get();
    }

    void add_instance(int degree, const MuKey& mu, const Block* b, int level) {
        if (++instance_count > kInstanceCap)
            throw_resource("cohomology table exceeds the instance cap; lower the truncation");
        degrees[degree].instances.push_back(Instance{mu, b, level, 0, 0});
    }

    // Register all multidegree instances of a block reachable within the
    // truncation: exponents >= 1 on min_one vertices, >= 2 on min_two
    // vertices, exactly 1 on the toggle support.
    void register_block(const Block& b, VertexMask min_one, VertexMask min_two);

    void build();

    BlockKey key_for_mu(const MuKey& mu, VertexMask outside) const {
        BlockKey key;
        for (int v = 0; v < k->vertex_count(); ++v) {
            if (mu.e[v] == 0) continue;
            VertexMask bit = VertexMask(1) << v;
            if (!(outside & bit)) key.required |= bit;
            else if (mu.e[v] == 1) key.supp_toggles |= bit;
            else key.free_toggles |= bit;  // exponent >= 2 outside I: full model
        }
        return key;
    }
};

void EquivariantCohomology::Impl::register_block(const Block& b, VertexMask min_one,
                                                 VertexMask min_two) {
    int ones = popcount(b.key().supp_toggles);
    std::vector<int> vs;  // vertices with adjustable exponents
    for_each_vertex(min_one | min_two, [&](int v) { vs.push_back(v); });
    int base = 0;  // minimal total weight of the adjustable part
    for_each_vertex(min_one, [&](int) { base += 1; });
    for_each_vertex(min_two, [&](int) { base += 2; });

    for (int l = 0; l < b.levels(); ++l) {
        const auto& step = b.level_cohomology(l);
        if (step.free_rank() == 0 && step.torsion().empty()) continue;
        // weight w = t + ones, degree n = 2w - l; t is the adjustable total.
        for (int t = base;; ++t) {
            int n = 2 * (t + ones) - l;
            if (n > truncation) break;
            // distribute t over vs with the stated minima
            MuKey mu;
            for_each_vertex(b.key().supp_toggles, [&](int v) { mu.e[v] = 1; });
            auto emit = [&]() { add_instance(n, mu, &b, l); };
            auto rec = [&](auto&& self, std::size_t idx, int left) -> void {
                if (idx == vs.size()) {
                    if (left == 0) emit();
                    return;
                }
                int v = vs[idx];
                int lo = (min_two >> v) & 1 ? 2 : 1;
                int needed = 0;
                for (std::size_t r = idx + 1; r < vs.size(); ++r)
                    needed += (min_two >> vs[r]) & 1 ? 2 : 1;
                for (int e = lo; e + needed <= left; ++e) {
                    mu.e[v] = static_cast<std::uint8_t>(e);
                    self(self, idx + 1, left - e);
                }
                mu.e[v] = 0;
            };
            if (vs.empty()) {
                if (t == 0) emit();
                break;  // no adjustable exponents: single weight
            }
            rec(rec, 0, t);
        }
    }
}

void EquivariantCohomology::Impl::build() {
    degrees.assign(truncation + 1, DegreeData{});
    VertexMask outside = k->full_mask() & ~torus;

    if (model == Model::reduced) {
        // sigma0 runs over faces inside I, S over subsets of V - I.
        VertexMask sigma = 0;
        for (;;) {
            if (k->is_face(sigma)) {
                VertexMask s = 0;
                for (;;) {
                    const Block& b = block(BlockKey{sigma, s, 0});
                    register_block(b, sigma, 0);
                    if (s == outside) break;
                    s = (s - outside) & outside;
                }
            }
            if (sigma == torus) break;
            sigma = (sigma - torus) & torus;
        }
    } else {
        // sigma_I over subsets of I, W over support outside I, S2 over the
        // part of W with exponent >= 2.
        VertexMask sigma = 0;
        for (;;) {
            VertexMask w = 0;
            for (;;) {
                VertexMask s2 = 0;
                for (;;) {
                    VertexMask required = sigma | s2;
                    if (k->is_face(required)) {
                        const Block& b = block(BlockKey{required, w & ~s2, s2});
                        register_block(b, sigma, s2);
                    }
                    if (s2 == w) break;
                    s2 = (s2 - w) & w;
                }
                if (w == outside) break;
                w = (w - outside) & outside;
            }
            if (sigma == torus) break;
            sigma = (sigma - torus) & torus;
        }
    }

    for (DegreeData& dd : degrees) {
        std::sort(dd.instances.begin(), dd.instances.end(),
                  [](const Instance& a, const Instance& b) { return a.mu < b.mu; });
        for (Instance& inst : dd.instances) {
            inst.first_free = dd.free_rank;
            inst.first_torsion = dd.torsion_total;
            dd.free_rank += inst.free_count();
            dd.torsion_total += inst.torsion_count();
            const auto& t = inst.block->level_cohomology(inst.level).torsion();
            dd.torsion_orders.insert(dd.torsion_orders.end(), t.begin(), t.end());
        }
        dd.torsion_sorted = dd.torsion_orders;
        std::sort(dd.torsion_sorted.begin(), dd.torsion_sorted.end());
    }
}

EquivariantCohomology::EquivariantCohomology(const SimplicialComplex& k, TorusSubset i,
                                             int truncation, Model model)
    : k_(std::make_shared<const SimplicialComplex>(k)),
      i_(i),
      truncation_(truncation),
      model_(model) {
    if ((i & ~k.full_mask()) != 0)
        throw_input("equivariant cohomology: I is not a subset of the vertex set");
    if (truncation < 0) throw_input("equivariant cohomology: negative truncation");
    if (truncation > 250)
        throw_resource("truncation above 250 is not supported");
    auto impl = std::make_shared<Impl>();
    impl->k = k_;
    impl->torus = i;
    impl->truncation = truncation;
    impl->model = model;
    impl->build();
    impl_ = std::move(impl);
}

long EquivariantCohomology::free_rank(int n) const {
    if (n < 0 || n > truncation_) throw_input("degree out of range");
    return impl_->degrees[n].free_rank;
}

std::vector<Int> EquivariantCohomology::torsion(int n) const {
    if (n < 0 || n > truncation_) throw_input("degree out of range");
    return impl_->degrees[n].torsion_sorted;
}

long EquivariantCohomology::generator_count(int n) const {
    if (n < 0 || n > truncation_) throw_input("degree out of range");
    return impl_->degrees[n].free_rank + impl_->degrees[n].torsion_total;
}

bool EquivariantCohomology::generator_is_torsion(int n, long g) const {
    return g >= free_rank(n);
}

Int EquivariantCohomology::generator_order(int n, long g) const {
    if (n < 0 || n > truncation_) throw_input("degree out of range");
    const DegreeData& dd = impl_->degrees[n];
    if (g < dd.free_rank) return 0;
    return dd.torsion_orders[g - dd.free_rank];
}

namespace {

// Locate the instance containing a generator offset.
const Instance* find_instance_by_offset(const std::vector<Instance>& instances,
                                        long offset, bool torsion) {
    auto key = [&](const Instance& inst) {
        return torsion ? inst.first_torsion : inst.first_free;
    };
    long lo = 0, hi = static_cast<long>(instances.size()) - 1, best = -1;
    while (lo <= hi) {
        long mid = (lo + hi) / 2;
        if (key(instances[mid]) <= offset) {
            best = mid;
            lo = mid + 1;
        } else {
            hi = mid - 1;
        }
    }
    // step back over empty instances sharing the same offset
    while (best >= 0) {
        const Instance& inst = instances[best];
        long count = torsion ? inst.torsion_count() : inst.free_count();
        if (count > 0 && offset < key(inst) + count) return &inst;
        --best;
    }
    return nullptr;
}

Monomial instance_monomial(const MuKey& mu, int m, VertexMask j) {
    Monomial mono;
    mono.u_part = j;
    mono.exps.assign(m, 0);
    for (int v = 0; v < m; ++v) {
        int e = mu.e[v] - (((j >> v) & 1) ? 1 : 0);
        mono.exps[v] = static_cast<std::uint16_t>(e);
    }
    return mono;
}

}  // namespace

Cochain EquivariantCohomology::representative(int n, long g) const {
    if (n < 0 || n > truncation_) throw_input("degree out of range");
    const DegreeData& dd = impl_->degrees[n];
    bool torsion = g >= dd.free_rank;
    long offset = torsion ? g - dd.free_rank : g;
    const Instance* inst = find_instance_by_offset(dd.instances, offset, torsion);
    if (!inst) throw_input("generator index out of range");
    const auto& step = inst->block->level_cohomology(inst->level);
    long local = offset - (torsion ? inst->first_torsion : inst->first_free);
    const std::vector<Int>& vec = torsion
                                      ? step.torsion_representative(static_cast<int>(local))
                                      : step.free_representative(static_cast<int>(local));
    Cochain c(k_, i_, model_);
    const auto& basis = inst->block->level_basis(inst->level);
    for (std::size_t idx = 0; idx < basis.size(); ++idx)
        if (vec[idx] != 0)
            c.add_term(instance_monomial(inst->mu, k_->vertex_count(), basis[idx]), vec[idx]);
    return c;
}

bool EquivariantCohomology::ClassExpr::is_zero() const {
    for (const Int& x : free_coords)
        if (x != 0) return false;
    for (const Int& x : torsion_coords)
        if (x != 0) return false;
    return true;
}

EquivariantCohomology::ClassExpr EquivariantCohomology::classify(const Cochain& z) const {
    bool same_complex = &z.complex() == k_.get() || z.complex() == *k_;
    if (!same_complex || z.torus() != i_ || z.model() != model_)
        throw_input("classify: cochain ambient does not match");
    ClassExpr out;
    if (z.is_zero()) return out;

    int n = z.degree();
    if (n > truncation_) throw_input("classify: degree exceeds the truncation");
    const DegreeData& dd = impl_->degrees[n];
    out.degree = n;
    out.free_coords.assign(dd.free_rank, 0);
    out.torsion_coords.assign(dd.torsion_total, 0);

    // split by multidegree
    std::map<MuKey, std::vector<std::pair<VertexMask, Int>>> groups;
    for (const auto& [mono, coeff] : z.terms()) {
        if (mono.degree() != n) throw_input("classify: cochain is not homogeneous");
        MuKey mu;
        MultiDegree md = mono.multidegree();
        for (int v = 0; v < static_cast<int>(md.size()); ++v)
            mu.e[v] = static_cast<std::uint8_t>(md[v]);
        groups[mu].emplace_back(mono.u_part, coeff);
    }

    VertexMask outside = k_->full_mask() & ~i_;
    for (const auto& [mu, terms] : groups) {
        const Block* b = impl_->find_block(impl_->key_for_mu(mu, outside));
        if (!b) throw_internal("classify: block missing for an admissible multidegree");
        int weight = 0;
        for (int v = 0; v < k_->vertex_count(); ++v) weight += mu.e[v];
        int level = 2 * weight - n;
        if (level < 0 || level >= b->levels())
            throw_internal("classify: level out of range");
        const auto& basis = b->level_basis(level);
        std::vector<Int> coords(basis.size());
        for (const auto& [j, coeff] : terms) {
            auto it = std::lower_bound(basis.begin(), basis.end(), j);
            if (it == basis.end() || *it != j)
                throw_internal("classify: monomial outside the block basis");
            coords[it - basis.begin()] = coeff;
        }
        ClassCoords local = b->level_cohomology(level).classify(coords);
        if (local.free_part.empty() && local.torsion_part.empty()) continue;

        auto it = std::lower_bound(
            dd.instances.begin(), dd.instances.end(), mu,
            [](const Instance& inst, const MuKey& key) { return inst.mu < key; });
        if (it == dd.instances.end() || !(it->mu == mu))
            throw_internal("classify: instance missing for a multidegree with generators");
        for (std::size_t a = 0; a < local.free_part.size(); ++a)
            out.free_coords[it->first_free + a] = local.free_part[a];
        for (std::size_t a = 0; a < local.torsion_part.size(); ++a)
            out.torsion_coords[it->first_torsion + a] = local.torsion_part[a];
    }
    return out;
}

bool EquivariantCohomology::same_class_up_to_sign(const Cochain& a, const Cochain& b) const {
    ClassExpr ca = classify(a);
    ClassExpr cb = classify(b);
    if (ca.free_coords == cb.free_coords && ca.torsion_coords == cb.torsion_coords)
        return true;
    ClassExpr cnb = classify(-b);
    return ca.free_coords == cnb.free_coords && ca.torsion_coords == cnb.torsion_coords;
}

std::vector<EquivariantCohomology::BlockSummary> EquivariantCohomology::blocks(int n) const {
    if (n < 0 || n > truncation_) throw_input("degree out of range");
    std::vector<BlockSummary> out;
    for (const Instance& inst : impl_->degrees[n].instances) {
        BlockSummary row;
        row.mu = mu_to_multidegree(inst.mu, k_->vertex_count());
        row.free_rank = inst.free_count();
        row.torsion = inst.block->level_cohomology(inst.level).torsion();
        out.push_back(std::move(row));
    }
    return out;
}

Cochain v_monomial(const SimplicialComplex& k, TorusSubset i, Model model,
                   const MultiDegree& exps) {
    Monomial mono;
    mono.exps = exps;
    mono.exps.resize(k.vertex_count(), 0);
    return Cochain::monomial(k, i, model, mono, 1);
}

EquivariantCohomology::ClassExpr cup_product(const EquivariantCohomology& e,
                                             const Cochain& x, const Cochain& y) {
    Cochain z = multiply(x, y);
    if (!z.is_zero() && z.degree() > e.truncation())
        throw_input("cup_product: degree overflow beyond the truncation");
    return e.classify(z);
}

EquivariantCohomology::ClassExpr module_action(const EquivariantCohomology& e,
                                               const MultiDegree& v_exps,
                                               const Cochain& x) {
    for (int v = 0; v < static_cast<int>(v_exps.size()); ++v)
        if (v_exps[v] > 0 && !((e.torus() >> v) & 1))
            throw_input("module_action: monomial not supported in I");
    Cochain vm = v_monomial(e.complex(), e.torus(), e.model(), v_exps);
    return cup_product(e, vm, x);
}

std::vector<Int> hilbert_face_ring(const SimplicialComplex& k, int truncation) {
    std::vector<long> f = k.f_vector();
    std::vector<Int> dims(truncation + 1, 0);
    for (int t = 0; 2 * t <= truncation; ++t) {
        Int total = 0;
        for (int s = 0; s < static_cast<int>(f.size()); ++s) {
            if (f[s] == 0) continue;
            if (s == 0) {
                if (t == 0) total += f[0];
                continue;
            }
            if (t < s) continue;
            Int ways;
            mpz_bin_uiui(ways.get_mpz_t(), t - 1, s - 1);
            total += ways * f[s];
        }
        dims[2 * t] = total;
    }
    return dims;
}

namespace {

// Dimensions of the polynomial ring on |I| degree-2 generators.
Int polynomial_dimension(int torus_size, int t) {
    if (torus_size == 0) return t == 0 ? 1 : 0;
    Int ways;
    mpz_bin_uiui(ways.get_mpz_t(), t + torus_size - 1, torus_size - 1);
    return ways;
}

}  // namespace

std::optional<int> collapse_check(const EquivariantCohomology& e,
                                  const EquivariantCohomology& ordinary) {
    if (!(e.complex() == ordinary.complex()))
        throw_input("collapse_check: different complexes");
    if (ordinary.torus() != 0)
        throw_input("collapse_check: the reference computation must have I = {}");
    if (ordinary.truncation() < e.truncation())
        throw_input("collapse_check: truncation mismatch");
    int size = popcount(e.torus());
    for (int n = 0; n <= e.truncation(); ++n) {
        Int expected = 0;
        for (int t = 0; 2 * t <= n; ++t)
            expected += polynomial_dimension(size, t) * Int(ordinary.free_rank(n - 2 * t));
        Int actual(e.free_rank(n));
        if (actual < expected) return n;
        if (actual > expected)
            throw_internal("collapse_check: computed rank exceeds the product bound");
    }
    return std::nullopt;
}

bool verify_witness(const EquivariantCohomology& e, const TorsionWitness& w) {
    const Cochain& rep = w.representative;
    if (rep.is_zero()) return false;
    if (rep.degree() > e.truncation()) return false;
    if (!differential(rep).is_zero()) return false;
    if (e.classify(rep).is_zero()) return false;
    for (int v = 0; v < static_cast<int>(w.annihilator.size()); ++v)
        if (w.annihilator[v] > 0 && !((e.torus() >> v) & 1)) return false;
    Cochain ann = v_monomial(e.complex(), e.torus(), e.model(), w.annihilator);
    Cochain z = multiply(rep, ann);
    if (!z.is_zero() && z.degree() > e.truncation()) return false;
    return e.classify(z).is_zero();
}

std::optional<TorsionWitness> torsion_witness_search(const EquivariantCohomology& e) {
    const SimplicialComplex& k = e.complex();
    TorusSubset torus = e.torus();
    int d = e.truncation();
    int m = k.vertex_count();

    auto v_exps_of = [&](VertexMask s) {
        MultiDegree exps(m, 0);
        for_each_vertex(s, [&](int v) { exps[v] = 1; });
        return exps;
    };

    // 1. I itself is not a face: the class of 1 is annihilated by v_I.
    if (!k.is_face(torus)) {
        Cochain unit(e.complex_ptr(), torus, e.model());
        Monomial one_mono;
        one_mono.exps.assign(m, 0);
        unit.add_term(one_mono, 1);
        TorsionWitness w{TorsionWitness::Kind::non_face, std::move(unit), v_exps_of(torus)};
        if (2 * popcount(torus) <= d && verify_witness(e, w)) return w;
    }

    // 2. Missing-face pairs with difference exactly I. Pairs found inside any
    // full subcomplex are pairs of K itself (missing faces of an induced
    // subcomplex are missing faces of K), so one sweep over MF(K) covers the
    // induced-subcomplex route as well.
    const auto& mf = k.missing_faces();
    for (VertexMask i1 : mf) {
        for (VertexMask i2 : mf) {
            if (i1 == i2 || (i1 & ~i2) != torus) continue;
            VertexMask rest = i2 & ~i1;
            if (rest == 0) continue;
            int j = std::countr_zero(rest);
            int rep_degree = 2 * popcount(i2) - 1;
            if (rep_degree > d || rep_degree + 2 * popcount(torus) > d) continue;
            Monomial mono;
            mono.u_part = VertexMask(1) << j;
            mono.exps.assign(m, 0);
            for_each_vertex(i2 & ~(VertexMask(1) << j), [&](int v) { mono.exps[v] = 1; });
            Cochain rep(e.complex_ptr(), torus, e.model());
            rep.add_term(mono, 1);
            TorsionWitness w{TorsionWitness::Kind::missing_face_pair, std::move(rep),
                             v_exps_of(torus), i1, i2, j};
            if (!verify_witness(e, w))
                throw_internal("missing-face-pair witness failed to replay");
            return w;
        }
    }

    // 3. Generic scan: v_i * x over every computed generator x. Works on the
    // block coordinates directly; multiplication by v_i keeps the level and
    // shifts the multidegree by e_i, restricting to the surviving monomials.
    const auto& impl = *e.impl_;
    VertexMask outside = k.full_mask() & ~torus;
    for (int n = 0; n + 2 <= d; ++n) {
        const DegreeData& dd = impl.degrees[n];
        for (const Instance& inst : dd.instances) {
            const auto& step = inst.block->level_cohomology(inst.level);
            const auto& basis = inst.block->level_basis(inst.level);
            long gens = inst.free_count() + inst.torsion_count();
            for (long g = 0; g < gens; ++g) {
                bool torsion_gen = g >= inst.free_count();
                const std::vector<Int>& vec =
                    torsion_gen ? step.torsion_representative(
                                      static_cast<int>(g - inst.free_count()))
                                : step.free_representative(static_cast<int>(g));
                for (VertexMask bits = torus; bits; bits &= bits - 1) {
                    int i = std::countr_zero(bits);
                    MuKey mu2 = inst.mu;
                    mu2.e[i] = static_cast<std::uint8_t>(mu2.e[i] + 1);
                    const Block* b2 = impl.find_block(impl.key_for_mu(mu2, outside));
                    bool annihilated = false;
                    if (!b2) {
                        annihilated = true;  // enlarged support is a non-face
                    } else {
                        const auto& basis2 = b2->level_basis(inst.level);
                        std::vector<Int> coords(basis2.size());
                        bool nonzero = false;
                        for (std::size_t idx = 0; idx < basis.size(); ++idx) {
                            if (vec[idx] == 0) continue;
                            auto it =
                                std::lower_bound(basis2.begin(), basis2.end(), basis[idx]);
                            if (it == basis2.end() || *it != basis[idx]) continue;
                            coords[it - basis2.begin()] = vec[idx];
                            nonzero = true;
                        }
                        annihilated =
                            !nonzero ||
                            b2->level_cohomology(inst.level).classify(coords).is_zero();
                    }
                    if (!annihilated) continue;
                    Cochain rep(e.complex_ptr(), torus, e.model());
                    for (std::size_t idx = 0; idx < basis.size(); ++idx)
                        if (vec[idx] != 0)
                            rep.add_term(instance_monomial(inst.mu, m, basis[idx]), vec[idx]);
                    MultiDegree ann(m, 0);
                    ann[i] = 1;
                    TorsionWitness w{TorsionWitness::Kind::generic, rep, ann};
                    if (!verify_witness(e, w))
                        throw_internal("generic witness failed to replay");
                    return w;
                }
            }
        }
    }
    return std::nullopt;
}

const char* to_string(FreenessVerdict::Status s) {
    switch (s) {
        case FreenessVerdict::Status::free: return "FREE";
        case FreenessVerdict::Status::not_free: return "NOT_FREE";
        case FreenessVerdict::Status::undetermined: return "UNDETERMINED";
    }
    return "UNDETERMINED";
}

int default_truncation(const SimplicialComplex& k) { return 4 * k.vertex_count(); }

FreenessVerdict freeness_verdict(const SimplicialComplex& k, TorusSubset i,
                                 int truncation,
                                 const EquivariantCohomology* ordinary) {
    if ((i & ~k.full_mask()) != 0)
        throw_input("freeness_verdict: I is not a subset of the vertex set");
    FreenessVerdict v;
    v.truncation = truncation;

    bool i_is_face = k.is_face(i);
    if (i_is_face) {
        if (auto dec = join_decomposition(k)) {
            // I meets every boundary part in a proper subset; the factorwise
            // results tensor together.
            v.status = FreenessVerdict::Status::free;
            v.torus_split.clear();
            for (VertexMask part : dec->boundary_parts) {
                VertexMask piece = i & part;
                if (piece == part)
                    throw_internal("freeness_verdict: face meets a missing face fully");
                v.torus_split.push_back(piece);
            }
            v.torus_split.push_back(i & dec->simplex_part);
            v.decomposition = std::move(dec);
            return v;
        }
    }

    EquivariantCohomology e(k, i, truncation);
    v.witness_searched = true;
    if (auto w = torsion_witness_search(e)) {
        v.status = FreenessVerdict::Status::not_free;
        v.witness = std::move(w);
        return v;
    }

    std::optional<EquivariantCohomology> local_ordinary;
    if (!ordinary || !(ordinary->complex() == k) || ordinary->truncation() < truncation) {
        local_ordinary.emplace(k, 0, truncation);
        ordinary = &*local_ordinary;
    }
    if (auto deficit = collapse_check(e, *ordinary)) {
        v.status = FreenessVerdict::Status::not_free;
        v.deficit_degree = deficit;
        return v;
    }
    v.collapse_passed = true;
    v.status = FreenessVerdict::Status::undetermined;
    return v;
}

SurveyResult formality_survey(const SimplicialComplex& k, int truncation, int threads) {
    SurveyResult out;
    out.simplices = k.faces();
    out.decomposition = join_decomposition(k);
    out.decomposable = out.decomposition.has_value();
    out.complete_intersection = out.decomposable;  // pairwise-disjoint missing faces
    out.verdicts.resize(out.simplices.size());

    std::optional<EquivariantCohomology> ordinary;
    if (!out.decomposable) ordinary.emplace(k, 0, truncation);

    auto run = [&](std::size_t idx) {
        out.verdicts[idx] = freeness_verdict(k, out.simplices[idx], truncation,
                                             ordinary ? &*ordinary : nullptr);
    };

    if (threads <= 1) {
        for (std::size_t idx = 0; idx < out.simplices.size(); ++idx) run(idx);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        auto worker = [&] {
            for (;;) {
                std::size_t idx = next.fetch_add(1);
                if (idx >= out.simplices.size()) return;
                run(idx);
            }
        };
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    if (out.decomposable)
        for (const FreenessVerdict& v : out.verdicts)
            if (v.status == FreenessVerdict::Status::not_free)
                throw_internal("survey: torsion witness on a decomposable complex");
    return out;
}

FlagReport flag_criterion(const SimplicialComplex& k, int truncation) {
    if (!is_flag(k)) throw_input("flag_criterion: complex is not flag");
    FlagReport r;
    r.decomposition = join_decomposition(k);
    r.condition_b = r.decomposition.has_value();
    if (r.condition_b)
        for (VertexMask part : r.decomposition->boundary_parts)
            if (popcount(part) != 2) r.condition_b = false;

    std::optional<EquivariantCohomology> ordinary;
    if (!r.decomposition) ordinary.emplace(k, 0, truncation);
    r.no_vertex_obstruction = true;
    for (int i = 0; i < k.vertex_count(); ++i) {
        r.vertex_verdicts.push_back(freeness_verdict(k, VertexMask(1) << i, truncation,
                                                     ordinary ? &*ordinary : nullptr));
        if (r.vertex_verdicts.back().status == FreenessVerdict::Status::not_free)
            r.no_vertex_obstruction = false;
    }
    r.agreement = r.condition_b == r.no_vertex_obstruction;
    return r;
}

GraphReport graph_criterion(const SimplicialComplex& k, int truncation) {
    if (k.dimension() > 1) throw_input("graph_criterion: complex is not one-dimensional");
    GraphReport r;
    r.classification = graph_classify(k);
    r.in_list = r.classification != GraphClass::Other;

    std::optional<EquivariantCohomology> ordinary;
    if (!join_decomposition(k)) ordinary.emplace(k, 0, truncation);
    r.no_vertex_obstruction = true;
    for (int i = 0; i < k.vertex_count(); ++i) {
        r.vertex_verdicts.push_back(freeness_verdict(k, VertexMask(1) << i, truncation,
                                                     ordinary ? &*ordinary : nullptr));
        if (r.vertex_verdicts.back().status == FreenessVerdict::Status::not_free)
            r.no_vertex_obstruction = false;
    }
    r.agreement = r.in_list == r.no_vertex_obstruction;
    return r;
}

}  // namespace zk
