#include "mnls/audit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mnls/convolve.hpp"
#include "mnls/eig.hpp"
#include "mnls/integrate.hpp"
#include "mnls/radial.hpp"
#include "mnls/reduce.hpp"
#include "mnls/spectral.hpp"
#include "mnls/states.hpp"

namespace mnls {

double kato_norm(const RealField& f) {
    RealField absf(f.grid);
    for (std::size_t i = 0; i < f.v.size(); ++i) absf.v[i] = std::abs(f.v[i]);
    return linf_norm(riesz_convolve(absf));
}

double kato_threshold(int n) {
    return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n - 1.0);
}

const ConditionEntry& ConditionReport::entry(const std::string& name) const {
    for (const auto& e : entries)
        if (e.name == name) return e;
    throw std::out_of_range("no condition entry named " + name);
}

bool ConditionReport::all_strict_pass() const {
    for (const auto& e : entries)
        if (!e.approximate && !e.pass) return false;
    return true;
}

std::string ConditionReport::table() const {
    std::ostringstream os;
    os << header_note << "\n";
    os << "M = " << m_param << ", b = " << b_param << "\n";
    for (const auto& e : entries) {
        os << (e.pass ? "PASS " : "FAIL ") << e.name << "  value=" << e.value;
        if (e.bounded_requirement)
            os << "  requirement=bounded  outer_growth=" << e.growth;
        else
            os << "  threshold=" << e.threshold;
        if (e.approximate) os << "  [approximate]";
        if (!e.caveat.empty()) os << "  (" << e.caveat << ")";
        os << "\n";
    }
    return os.str();
}

namespace {

constexpr double kGrowthDivergent = 0.999;

// dyadic_range guarantees in-box annuli contain samples; an empty one would
// silently zero a condition sum, so treat it as a hard error
double annulus_sup_checked(const RealField& f, int j) {
    AnnulusSup s = dyadic_annulus_sup(f, j);
    if (s.empty)
        throw std::logic_error("audit: empty dyadic annulus j=" + std::to_string(j) +
                               " inside the box");
    return s.value;
}

// Judge a "bounded on R^3" condition from the trend of its outermost dyadic
// contributions; a finite box can only extrapolate the tail.
ConditionEntry bounded_entry(std::string name, const std::vector<double>& contrib,
                             std::string caveat = {}, bool approximate = false) {
    ConditionEntry e;
    e.name = std::move(name);
    e.bounded_requirement = true;
    e.approximate = approximate;
    e.caveat = std::move(caveat);
    double total = 0.0;
    for (double c : contrib) total += c;
    e.value = total;
    if (contrib.size() >= 2) {
        const double last = contrib[contrib.size() - 1];
        const double prev = contrib[contrib.size() - 2];
        e.growth = prev > 0.0 ? last / prev : 0.0;
        const bool negligible = last <= 1e-14 * std::max(1.0, total);
        e.pass = negligible || e.growth < kGrowthDivergent;
    }
    return e;
}

double weak_norm_surrogate(const RealField& f, double p) {
    std::vector<double> mags(f.v.size());
    for (std::size_t i = 0; i < f.v.size(); ++i) mags[i] = std::abs(f.v[i]);
    std::sort(mags.begin(), mags.end(), std::greater<double>());
    const double vol = f.grid.cell_volume();
    double best = 0.0;
    for (std::size_t k = 0; k < mags.size(); ++k) {
        if (mags[k] == 0.0) break;
        best = std::max(best, mags[k] * std::pow((k + 1) * vol, 1.0 / p));
    }
    return best;
}

// Smallest Ritz value of H = -Delta_A + A0 on a small deterministic random
// subspace (FVc0 cannot be verified from samples; this is the documented
// numerical surrogate).
double ritz_min(const Grid& g, const RealVectorField& a, const RealField& a0) {
    constexpr int kDim = 6;
    std::vector<ComplexField> basis;
    for (int i = 0; i < kDim; ++i)
        basis.push_back(random_smooth_state(g, 7700 + i, 1.0, g.box_half_length / 3.0, 2));

    auto ip = [&](const ComplexField& u, const ComplexField& v) {
        return g.cell_volume() *
               pairwise_sum_transform(u.v.size(), [&](std::size_t i) {
                   return (std::conj(u.v[i]) * v.v[i]).real();
               });
    };
    auto ip_imag = [&](const ComplexField& u, const ComplexField& v) {
        return g.cell_volume() *
               pairwise_sum_transform(u.v.size(), [&](std::size_t i) {
                   return (std::conj(u.v[i]) * v.v[i]).imag();
               });
    };

    // modified Gram-Schmidt
    for (int i = 0; i < kDim; ++i) {
        for (int j = 0; j < i; ++j) {
            const cplx proj{ip(basis[j], basis[i]), ip_imag(basis[j], basis[i])};
            for (std::size_t k = 0; k < basis[i].v.size(); ++k)
                basis[i].v[k] -= proj * basis[j].v[k];
        }
        const double nrm = std::sqrt(ip(basis[i], basis[i]));
        for (auto& z : basis[i].v) z /= nrm;
    }

    auto apply_h = [&](const ComplexField& u) {
        ComplexField lap = spectral_laplacian(u);
        VectorField du = spectral_gradient(u);
        ComplexField out(g);
        for (std::int64_t i = 0; i < g.size(); ++i) {
            const cplx adotgrad = a[0].v[i] * du[0].v[i] + a[1].v[i] * du[1].v[i] +
                                  a[2].v[i] * du[2].v[i];
            const double asq = a[0].v[i] * a[0].v[i] + a[1].v[i] * a[1].v[i] +
                               a[2].v[i] * a[2].v[i];
            const cplx delta_a = lap.v[i] + cplx{0.0, 2.0} * adotgrad - asq * u.v[i];
            out.v[i] = -delta_a + a0.v[i] * u.v[i];
        }
        return out;
    };

    std::vector<ComplexField> hv;
    for (int i = 0; i < kDim; ++i) hv.push_back(apply_h(basis[i]));

    // real embedding of the Hermitian Ritz matrix
    std::vector<double> re(kDim * kDim), im(kDim * kDim);
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) {
            re[i * kDim + j] = ip(basis[i], hv[j]);
            im[i * kDim + j] = ip_imag(basis[i], hv[j]);
        }
    // hermitize against quadrature noise
    for (int i = 0; i < kDim; ++i)
        for (int j = i; j < kDim; ++j) {
            const double r = 0.5 * (re[i * kDim + j] + re[j * kDim + i]);
            const double m = 0.5 * (im[i * kDim + j] - im[j * kDim + i]);
            re[i * kDim + j] = re[j * kDim + i] = r;
            im[i * kDim + j] = m;
            im[j * kDim + i] = -m;
        }
    const int n2 = 2 * kDim;
    std::vector<double> big(n2 * n2, 0.0);
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) {
            big[i * n2 + j] = re[i * kDim + j];
            big[(i + kDim) * n2 + (j + kDim)] = re[i * kDim + j];
            big[i * n2 + (j + kDim)] = -im[i * kDim + j];
            big[(i + kDim) * n2 + j] = im[i * kDim + j];
        }
    std::vector<double> ev = symmetric_eigenvalues(std::move(big), n2);
    return *std::min_element(ev.begin(), ev.end());
}

}  // namespace

ConditionReport audit(const GaugePotential& gp, const Grid& g, double m_param, double b_param) {
    if (!(m_param > 0.0)) throw std::invalid_argument("audit: M must be > 0");
    if (!(b_param > 0.0 && b_param < 1.0)) throw std::invalid_argument("audit: need 0 < b < 1");
    const DyadicRange dy = dyadic_range(g);
    if (dy.count() < 3)
        throw std::invalid_argument("audit: grid too small to contain 3 dyadic annuli");

    ConditionReport rep;
    rep.m_param = m_param;
    rep.b_param = b_param;
    rep.header_note =
        "|dA| convention: Frobenius norm over unordered pairs (= |curl A| in 3D); "
        "radial sups are shell sups (lower bounds, one-shell quantization)";

    const RealVectorField a = gp.sample_a(g);
    const RealField a0 = gp.sample_a0(g);
    const CurvatureField cf = curvature(gp, g);

    RealField a_mag(g), btau_mag(g), dr_a0_plus(g), grad_a0_mag(g);
    for (std::int64_t i = 0; i < g.size(); ++i) {
        a_mag.v[i] = std::sqrt(a[0].v[i] * a[0].v[i] + a[1].v[i] * a[1].v[i] +
                               a[2].v[i] * a[2].v[i]);
        btau_mag.v[i] = std::sqrt(cf.b_tau[0].v[i] * cf.b_tau[0].v[i] +
                                  cf.b_tau[1].v[i] * cf.b_tau[1].v[i] +
                                  cf.b_tau[2].v[i] * cf.b_tau[2].v[i]);
        grad_a0_mag.v[i] = std::sqrt(cf.f0[0].v[i] * cf.f0[0].v[i] +
                                     cf.f0[1].v[i] * cf.f0[1].v[i] +
                                     cf.f0[2].v[i] * cf.f0[2].v[i]);
    }
    for (int i3 = 0; i3 < g.n; ++i3)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i1 = 0; i1 < g.n; ++i1) {
                const std::int64_t id = g.index(i1, i2, i3);
                const Vec3 x = g.point(i1, i2, i3);
                const double r = norm(x);
                // radial derivative of A0, positive part (F_0j = -d_j A0)
                const double dr_a0 = -(x.x * cf.f0[0].v[id] + x.y * cf.f0[1].v[id] +
                                       x.z * cf.f0[2].v[id]) / r;
                dr_a0_plus.v[id] = std::max(dr_a0, 0.0);
            }

    // FVc0 surrogate
    {
        ConditionEntry e;
        e.name = "FVc0";
        e.approximate = true;
        e.caveat = "self-adjointness/positivity not checked analytically; "
                   "random-subspace Ritz surrogate";
        const double lam_min = ritz_min(g, a, a0);
        e.value = lam_min;
        e.threshold = 0.0;
        e.pass = lam_min >= -1e-8 * std::max(1.0, std::abs(lam_min));
        rep.entries.push_back(e);
    }

    // FVc1: Coulomb gauge
    {
        ConditionEntry e;
        e.name = "FVc1";
        e.threshold = 1e-10;
        if (gp.analytic()) {
            e.value = 0.0;
            e.pass = true;
            e.caveat = "analytic family is divergence-free in closed form";
        } else {
            RealField div = spectral_divergence(gp.a_samples);
            double grad_norm_sq = 0.0;
            for (int j = 0; j < 3; ++j) {
                RealVectorField dj = spectral_gradient(gp.a_samples[j]);
                for (int k = 0; k < 3; ++k) grad_norm_sq += l2_norm_sq(dj[k]);
            }
            const double denom = std::sqrt(std::max(grad_norm_sq, 1e-300));
            e.value = l2_norm(div) / denom;
            e.pass = e.value <= 1e-10;
        }
        rep.entries.push_back(e);
    }

    // FVc2 composite, n = 3
    {
        RealField w1(g), w2(g);
        for (int i3 = 0; i3 < g.n; ++i3)
            for (int i2 = 0; i2 < g.n; ++i2)
                for (int i1 = 0; i1 < g.n; ++i1) {
                    const std::int64_t id = g.index(i1, i2, i3);
                    const double r = norm(g.point(i1, i2, i3));
                    w1.v[id] = std::pow(r, 1.5) * btau_mag.v[id];
                    w2.v[id] = r * r * dr_a0_plus.v[id];
                }
        const double t1 = radial_profile(w1).sup_quadrature([](double s) { return s * s; });
        const double t2 = radial_profile(w2).sup_quadrature([](double s) { return s; });
        ConditionEntry e;
        e.name = "FVc2";
        e.value = (m_param + 0.5) * (m_param + 0.5) / m_param * t1 + (2.0 * m_param + 1.0) * t2;
        e.threshold = 0.5;
        e.pass = e.value < 0.5;
        rep.entries.push_back(e);

        // n >= 4 variant, reported for reference only (dynamics run at n = 3)
        RealField v1(g), v2(g);
        for (int i3 = 0; i3 < g.n; ++i3)
            for (int i2 = 0; i2 < g.n; ++i2)
                for (int i1 = 0; i1 < g.n; ++i1) {
                    const std::int64_t id = g.index(i1, i2, i3);
                    const double r = norm(g.point(i1, i2, i3));
                    v1.v[id] = r * r * btau_mag.v[id];
                    v2.v[id] = r * r * r * dr_a0_plus.v[id];
                }
        ConditionEntry e4;
        e4.name = "FVc2_n4_ref";
        const double m1 = linf_norm(v1), m2 = linf_norm(v2);
        e4.value = m1 * m1 + 2.0 * m2;
        e4.threshold = 2.0 / 3.0 * 3.0 * 1.0;  // (2/3)(n-1)(n-3) at n = 4
        e4.pass = e4.value < e4.threshold;
        e4.approximate = true;
        e4.caveat = "n >= 4 threshold shown for reference; dynamics are n = 3";
        rep.entries.push_back(e4);
    }

    // (latest): sum_j 2^j sup_{C_j} |dA|^{2-2b}
    {
        std::vector<double> terms;
        for (int j = dy.j_min; j <= dy.j_max; ++j) {
            const double sup = annulus_sup_checked(cf.da_magnitude, j);
            terms.push_back(std::exp2(j) * std::pow(sup, 2.0 - 2.0 * b_param));
        }
        rep.entries.push_back(bounded_entry("latest", terms,
                                            "partial dyadic sum over in-box annuli"));
    }

    // (latestc1)/(latestc2): weighted L^1_r L^inf norms with dyadic trend
    auto radial_bounded = [&](std::string name, const RealField& w, std::string caveat) {
        RadialProfile p = radial_profile(w);
        std::vector<double> contrib;
        for (int j = dy.j_min; j <= dy.j_max; ++j) {
            const double lo = std::exp2(j), hi = std::exp2(j + 1);
            double acc = 0.0;
            for (int k = 0; k < p.shells(); ++k) {
                const double rm = p.r_mid(k);
                if (rm >= lo && rm < hi) acc += p.sup[k] * p.dr;
            }
            contrib.push_back(acc);
        }
        ConditionEntry e = bounded_entry(std::move(name), contrib, std::move(caveat));
        e.value = p.sup_quadrature([](double s) { return s; });  // full-box quadrature
        return e;
    };
    {
        RealField w(g);
        for (int i3 = 0; i3 < g.n; ++i3)
            for (int i2 = 0; i2 < g.n; ++i2)
                for (int i1 = 0; i1 < g.n; ++i1) {
                    const std::int64_t id = g.index(i1, i2, i3);
                    const double r = norm(g.point(i1, i2, i3));
                    w.v[id] = r * r * std::pow(cf.da_magnitude.v[id], 2.0 * b_param);
                }
        rep.entries.push_back(radial_bounded("latestc1", w, "r-quadrature of shell sups"));
    }
    {
        RealField w(g);
        for (int i3 = 0; i3 < g.n; ++i3)
            for (int i2 = 0; i2 < g.n; ++i2)
                for (int i1 = 0; i1 < g.n; ++i1) {
                    const std::int64_t id = g.index(i1, i2, i3);
                    const double r = norm(g.point(i1, i2, i3));
                    w.v[id] = r * r * grad_a0_mag.v[id];
                }
        rep.entries.push_back(radial_bounded("latestc2", w, "r-quadrature of shell sups"));
    }

    // (latestc3)/(latestc4): n >= 4 sup-norm conditions, reference only
    auto sup_bounded = [&](std::string name, const RealField& w) {
        std::vector<double> sups;
        for (int j = dy.j_min; j <= dy.j_max; ++j)
            sups.push_back(annulus_sup_checked(w, j));
        ConditionEntry e = bounded_entry(std::move(name), sups,
                                         "n >= 4 condition shown for reference", true);
        e.value = linf_norm(w);
        return e;
    };
    {
        RealField w3(g), w4(g);
        for (int i3 = 0; i3 < g.n; ++i3)
            for (int i2 = 0; i2 < g.n; ++i2)
                for (int i1 = 0; i1 < g.n; ++i1) {
                    const std::int64_t id = g.index(i1, i2, i3);
                    const double r = norm(g.point(i1, i2, i3));
                    w3.v[id] = r * r * r * std::pow(cf.da_magnitude.v[id], 2.0 * b_param);
                    w4.v[id] = r * r * r * grad_a0_mag.v[id];
                }
        rep.entries.push_back(sup_bounded("latestc3", w3));
        rep.entries.push_back(sup_bounded("latestc4", w4));
    }

    // (FVc3): weak-norm membership, distribution-function approximation
    {
        RealField op_coeff(g);
        for (std::int64_t i = 0; i < g.size(); ++i)
            op_coeff.v[i] = a_mag.v[i] * a_mag.v[i] + std::abs(a0.v[i]);
        ConditionEntry e1;
        e1.name = "FVc3_op";
        e1.bounded_requirement = true;
        e1.value = weak_norm_surrogate(op_coeff, 1.5);
        e1.pass = std::isfinite(e1.value);
        e1.approximate = true;
        e1.caveat = "approximate: weak-L^{3/2} from box samples; |A|^2 + |A0| magnitude proxy";
        rep.entries.push_back(e1);

        ConditionEntry e2;
        e2.name = "FVc3_A";
        e2.bounded_requirement = true;
        e2.value = weak_norm_surrogate(a_mag, 3.0);
        e2.pass = std::isfinite(e2.value);
        e2.approximate = true;
        e2.caveat = "approximate: weak-L^3 from box samples";
        rep.entries.push_back(e2);
    }

    // (FVc4)/(FVc5): Kato norms of the positive/negative parts of A0
    {
        RealField a0p(g), a0m(g);
        for (std::int64_t i = 0; i < g.size(); ++i) {
            a0p.v[i] = std::max(a0.v[i], 0.0);
            a0m.v[i] = std::max(-a0.v[i], 0.0);
        }
        ConditionEntry e4;
        e4.name = "FVc4";
        e4.bounded_requirement = true;
        e4.value = kato_norm(a0p);
        e4.pass = std::isfinite(e4.value);
        e4.caveat = "finite-box Kato norm";
        rep.entries.push_back(e4);

        ConditionEntry e5;
        e5.name = "FVc5";
        e5.value = kato_norm(a0m);
        e5.threshold = kato_threshold(3);
        e5.pass = e5.value < e5.threshold;
        e5.caveat = "threshold pi^{3/2}/Gamma(1/2) = pi";
        rep.entries.push_back(e5);
    }

    // (FVc6): 2^j sup|A| and 2^{2j} sup|A0| dyadic sums
    {
        std::vector<double> terms;
        for (int j = dy.j_min; j <= dy.j_max; ++j) {
            const double ta = std::exp2(j) * annulus_sup_checked(a_mag, j);
            const double t0 = std::exp2(2 * j) * annulus_sup_checked(a0, j);
            terms.push_back(ta + t0);
        }
        rep.entries.push_back(bounded_entry("FVc6", terms,
                                            "partial dyadic sum over in-box annuli"));
    }

    return rep;
}

}  // namespace mnls
