#include "isospec/metrics.hpp"

#include <cmath>

#include "isospec/sampling.hpp"

namespace isospec {

namespace {
const Complex kI(0.0, 1.0);

void check_horizontal(const TangentVector& X) {
    double defect = std::abs(real_inner(X.vec(), CVector(kI * X.base().vec())));
    if (defect > kHorizontalTol * std::max(1.0, X.vec().norm()))
        throw InvalidArgument("CP^n metric needs Hopf-horizontal vectors: <X, ip> = " +
                              std::to_string(defect));
}

void check_m_hat(const SpherePoint& p) {
    if (p.q().norm() < kOrbitTol || std::abs(p.r()) < kOrbitTol || std::abs(p.s()) < kOrbitTol)
        throw InvalidArgument("point is outside M-hat (one of q, r, s vanishes)");
}

// deformed vector X + form^1(X) F1 + form^2(X) F2 for one of the three variants
struct SphereDeformer {
    const MetricSpec& spec;
    const SpherePoint& p;
    CVector F1, F2;

    SphereDeformer(const MetricSpec& s, const SpherePoint& pt) : spec(s), p(pt) {
        if (spec.manifold == Manifold::Sphere) {
            F1 = z_star(ZVector{1.0, 0.0}, p).vec();
            F2 = z_star(ZVector{0.0, 1.0}, p).vec();
        } else {
            F1 = z_star_hopf_horizontal(1, p).vec();
            F2 = z_star_hopf_horizontal(2, p).vec();
        }
    }

    CVector deform(const TangentVector& X) const {
        ZValuedCovector c = (spec.manifold == Manifold::Sphere) ? lambda_form(spec.j, p, X)
                                                                : eta_form(spec.j, p, X);
        return X.vec() + c.c1 * F1 + c.c2 * F2;
    }
};

struct RpDeformer {
    const MetricSpec& spec;
    const RpPoint& pt;
    CVector F1p;
    Complex F2q;

    RpDeformer(const MetricSpec& s, const RpPoint& point)
        : spec(s), pt(point), F1p(kI * pt.p()), F2q(kI * pt.q()) {}

    std::pair<CVector, Complex> deform(const RpTangent& X) const {
        ZValuedCovector c = rp_lambda(spec.j, pt, X);
        return {X.xp() + c.c1 * F1p, X.xq() + c.c2 * F2q};
    }
};

} // namespace

MetricSpec::MetricSpec(Manifold mf, JMapPair jmap, int dim) : manifold(mf), j(std::move(jmap)), n(dim) {
    if (manifold == Manifold::RPodd) {
        if (j.m() != n) throw InvalidArgument("RP metric needs j.m == m");
    } else {
        if (n < 4) throw InvalidArgument("sphere/CP^n metrics need n >= 4");
        if (j.m() != n - 1) throw InvalidArgument("metric needs j.m == n - 1");
    }
}

double metric_eval(const MetricSpec& spec, const SpherePoint& p, const TangentVector& X,
                   const TangentVector& Y) {
    if (spec.manifold == Manifold::RPodd)
        throw InvalidArgument("RP metric takes RP points, not sphere points");
    if (p.n() != spec.n) throw InvalidArgument("metric_eval: point dimension mismatch");
    if (spec.manifold == Manifold::CPn) {
        check_horizontal(X);
        check_horizontal(Y);
    }
    SphereDeformer d(spec, p);
    return real_inner(d.deform(X), d.deform(Y));
}

double metric_eval(const MetricSpec& spec, const RpPoint& pt, const RpTangent& X,
                   const RpTangent& Y) {
    if (spec.manifold != Manifold::RPodd)
        throw InvalidArgument("sphere/CP^n metrics take sphere points");
    if (pt.m() != spec.n) throw InvalidArgument("metric_eval: point dimension mismatch");
    RpDeformer d(spec, pt);
    auto [xp, xq] = d.deform(X);
    auto [yp, yq] = d.deform(Y);
    return real_inner(xp, yp) + real_inner(xq, yq);
}

RMatrix gram(const MetricSpec& spec, const SpherePoint& p, const std::vector<TangentVector>& frame) {
    if (spec.manifold == Manifold::RPodd)
        throw InvalidArgument("RP metric takes RP points, not sphere points");
    if (p.n() != spec.n) throw InvalidArgument("gram: point dimension mismatch");
    SphereDeformer d(spec, p);
    const int k = static_cast<int>(frame.size());
    std::vector<CVector> def;
    def.reserve(frame.size());
    for (const auto& X : frame) {
        if (spec.manifold == Manifold::CPn) check_horizontal(X);
        def.push_back(d.deform(X));
    }
    RMatrix G(k, k);
    for (int i = 0; i < k; ++i)
        for (int jj = i; jj < k; ++jj) {
            double v = real_inner(def[static_cast<std::size_t>(i)], def[static_cast<std::size_t>(jj)]);
            G(i, jj) = v;
            G(jj, i) = v;
        }
    return G;
}

RMatrix gram(const MetricSpec& spec, const RpPoint& pt, const std::vector<RpTangent>& frame) {
    if (spec.manifold != Manifold::RPodd)
        throw InvalidArgument("sphere/CP^n metrics take sphere points");
    if (pt.m() != spec.n) throw InvalidArgument("gram: point dimension mismatch");
    RpDeformer d(spec, pt);
    const int k = static_cast<int>(frame.size());
    std::vector<std::pair<CVector, Complex>> def;
    def.reserve(frame.size());
    for (const auto& X : frame) def.push_back(d.deform(X));
    RMatrix G(k, k);
    for (int i = 0; i < k; ++i)
        for (int jj = i; jj < k; ++jj) {
            double v = real_inner(def[static_cast<std::size_t>(i)].first,
                                  def[static_cast<std::size_t>(jj)].first) +
                       real_inner(def[static_cast<std::size_t>(i)].second,
                                  def[static_cast<std::size_t>(jj)].second);
            G(i, jj) = v;
            G(jj, i) = v;
        }
    return G;
}

double orbit_area_sq(const SpherePoint& p) {
    check_m_hat(p);
    double rr = std::norm(p.r());
    double ss = std::norm(p.s());
    return rr * ss * (1.0 - rr - ss);
}

double orbit_angle(double a) {
    if (!(a > 0.0) || !(a < 0.7071067811865476))
        throw InvalidArgument("orbit_angle needs 0 < a < 1/sqrt(2)");
    double c = -a * a / (1.0 - a * a);
    return std::acos(c);
}

QuotientCoords quotient_coords(const SpherePoint& p) {
    check_m_hat(p);
    QuotientCoords out;
    CVector q = p.q();
    out.q_dir = q / q.norm();
    out.a = std::abs(p.r());
    out.b = std::abs(p.s());
    return out;
}

bool coords_equal(const QuotientCoords& c1, const QuotientCoords& c2, double tol) {
    if (c1.q_dir.size() != c2.q_dir.size()) return false;
    if (std::abs(c1.a - c2.a) > tol || std::abs(c1.b - c2.b) > tol) return false;
    // [q] matches up to a unit scalar iff |<q1, q2>_C| = 1
    double overlap = std::abs(c1.q_dir.dot(c2.q_dir));
    return overlap >= 1.0 - tol;
}

double condition_I_check(const JMapPair& j, const JMapPair& j2, const DualWeight& mu, int samples,
                         std::uint64_t seed) {
    if (samples < 1) throw InvalidArgument("condition_I_check needs samples >= 1");
    const int m = j.m();
    const int n = m + 1;
    ZVector Z{static_cast<double>(mu.mu1), static_cast<double>(mu.mu2)};
    CMatrix A = conjugator_for(j, j2, Z);

    // T-equivariant embedding of the conjugator: rotate the q block only
    CMatrix G = CMatrix::Identity(n + 1, n + 1);
    G.topLeftCorner(m, m) = A;

    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        StreamRng rng(seed, static_cast<std::uint64_t>(i));
        SpherePoint p = sample_sphere_point(rng, n);
        TangentVector X = sample_tangent(rng, p);

        SpherePoint gp(n, G * p.vec());
        TangentVector gX(gp, G * X.vec());

        ZValuedCovector lam = lambda_form(j, p, X);
        ZValuedCovector lam2 = lambda_form(j2, gp, gX);
        ZValuedCovector et = eta_form(j, p, X);
        ZValuedCovector et2 = eta_form(j2, gp, gX);
        double mu_lam = mu.mu1 * lam.c1 + mu.mu2 * lam.c2;
        double mu_lam2 = mu.mu1 * lam2.c1 + mu.mu2 * lam2.c2;
        double mu_et = mu.mu1 * et.c1 + mu.mu2 * et.c2;
        double mu_et2 = mu.mu1 * et2.c1 + mu.mu2 * et2.c2;
        worst = std::max(worst, std::abs(mu_lam - mu_lam2));
        worst = std::max(worst, std::abs(mu_et - mu_et2));

        // G commutes with the torus action because it only touches the q block
        double a = 6.283185307179586 * rng.uniform();
        double b = 6.283185307179586 * rng.uniform();
        CVector lhs = G * torus_act(a, b, p).vec();
        CVector rhs = torus_act(a, b, gp).vec();
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    return worst;
}

RMatrix fubini_study_chart(const CVector& w) {
    const int n = static_cast<int>(w.size());
    double d = 1.0 + w.squaredNorm();
    CMatrix H(n, n);
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj) {
            Complex v = -std::conj(w(i)) * w(jj) / (d * d);
            if (i == jj) v += 1.0 / d;
            H(i, jj) = v;
        }
    RMatrix G(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < n; ++jj) {
            double re = H(i, jj).real();
            double im = H(i, jj).imag();
            G(2 * i, 2 * jj) = re;
            G(2 * i, 2 * jj + 1) = im;
            G(2 * i + 1, 2 * jj) = -im;
            G(2 * i + 1, 2 * jj + 1) = re;
        }
    return G;
}

} // namespace isospec
