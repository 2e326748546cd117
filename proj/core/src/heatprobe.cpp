#include "isospec/heatprobe.hpp"

#include <Eigen/Dense>
#include <atomic>
#include <cmath>
#include <numbers>

#include "isospec/common.hpp"
#include "isospec/forms.hpp"
#include "isospec/parallel.hpp"
#include "isospec/rng.hpp"
#include "isospec/sampling.hpp"

namespace isospec {
namespace {

CVector from_interleaved(const RVector& x) {
    const int n = static_cast<int>(x.size()) / 2;
    CVector w(n);
    for (int k = 0; k < n; ++k) w(k) = Complex(x(2 * k), x(2 * k + 1));
    return w;
}

CVector insert_at(const CVector& w, int pivot, Complex value) {
    const int n = static_cast<int>(w.size());
    CVector out(n + 1);
    out.head(pivot) = w.head(pivot);
    out(pivot) = value;
    out.tail(n - pivot) = w.tail(n - pivot);
    return out;
}

} // namespace

RMatrix chart_metric(const MetricSpec& spec, const RVector& x, int pivot) {
    if (spec.manifold != Manifold::CPn)
        throw InvalidArgument("chart_metric: spec must be a CPn metric");
    const int n = spec.n;
    if (static_cast<int>(x.size()) != 2 * n)
        throw InvalidArgument("chart_metric: expected " + std::to_string(2 * n) + " coordinates");
    if (pivot < 0 || pivot > n) throw InvalidArgument("chart_metric: pivot out of range");

    const CVector w = from_interleaved(x);
    const double nn = 1.0 + w.squaredNorm();
    const double N = std::sqrt(nn);
    const CVector hom = insert_at(w, pivot, Complex(1.0, 0.0));
    SpherePoint p(n, hom / N);

    // Unit section of the chart: P(w) = hom(w)/N(w). Its differential in the
    // chart direction u is insert(u, 0)/N - hom * <u, w>/N^3; the horizontal
    // projection makes the frame a legitimate lift of the chart frame.
    std::vector<TangentVector> frame;
    frame.reserve(2 * n);
    for (int k = 0; k < n; ++k) {
        for (int part = 0; part < 2; ++part) {
            CVector u = CVector::Zero(n);
            u(k) = part == 0 ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
            const double uw = real_inner(u, w);
            CVector lift = insert_at(u, pivot, Complex(0.0, 0.0)) / N - hom * (uw / (nn * N));
            frame.push_back(project_hopf_horizontal(p, lift));
        }
    }
    return gram(spec, p, frame);
}

double scalar_curvature_fd(const MetricField& g, const RVector& x, double h) {
    const int d = static_cast<int>(x.size());
    if (d < 2) throw InvalidArgument("scalar_curvature_fd: need at least 2 coordinates");
    if (!(h > 0.0)) throw InvalidArgument("scalar_curvature_fd: step must be positive");

    const RMatrix g0 = g(x);
    Eigen::SelfAdjointEigenSolver<RMatrix> es(g0);
    if (es.info() != Eigen::Success)
        throw NumericalError("scalar_curvature_fd: eigendecomposition of g failed");
    const double ev_min = es.eigenvalues()(0);
    const double ev_max = es.eigenvalues()(d - 1);
    if (!(ev_min > 0.0) || ev_max / ev_min > 1e8)
        throw NumericalError("scalar_curvature_fd: metric ill-conditioned at sample point");
    const RMatrix ginv =
        es.eigenvectors() * es.eigenvalues().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();

    std::vector<RMatrix> gp(d), gm(d);
    std::vector<RMatrix> dg(d);
    std::vector<std::vector<RMatrix>> ddg(d, std::vector<RMatrix>(d));
    for (int mu = 0; mu < d; ++mu) {
        RVector xp = x, xm = x;
        xp(mu) += h;
        xm(mu) -= h;
        gp[mu] = g(xp);
        gm[mu] = g(xm);
        dg[mu] = (gp[mu] - gm[mu]) / (2.0 * h);
        ddg[mu][mu] = (gp[mu] - 2.0 * g0 + gm[mu]) / (h * h);
    }
    for (int mu = 0; mu < d; ++mu) {
        for (int nu = mu + 1; nu < d; ++nu) {
            RVector xpp = x, xpm = x, xmp = x, xmm = x;
            xpp(mu) += h; xpp(nu) += h;
            xpm(mu) += h; xpm(nu) -= h;
            xmp(mu) -= h; xmp(nu) += h;
            xmm(mu) -= h; xmm(nu) -= h;
            ddg[mu][nu] = (g(xpp) - g(xpm) - g(xmp) + g(xmm)) / (4.0 * h * h);
            ddg[nu][mu] = ddg[mu][nu];
        }
    }

    // Christoffel symbols, lower then raised.
    std::vector<RMatrix> gl(d, RMatrix::Zero(d, d)); // gl[lam](nu, sig)
    for (int lam = 0; lam < d; ++lam)
        for (int nu = 0; nu < d; ++nu)
            for (int sig = 0; sig < d; ++sig)
                gl[lam](nu, sig) = 0.5 * (dg[nu](sig, lam) + dg[sig](nu, lam) - dg[lam](nu, sig));
    std::vector<RMatrix> gu(d, RMatrix::Zero(d, d)); // gu[mu](nu, sig)
    for (int mu = 0; mu < d; ++mu)
        for (int lam = 0; lam < d; ++lam)
            if (ginv(mu, lam) != 0.0) gu[mu] += ginv(mu, lam) * gl[lam];

    // d(g^{-1}) = -g^{-1} dg g^{-1}; then the derivative of the raised symbol.
    std::vector<RMatrix> dginv(d);
    for (int rho = 0; rho < d; ++rho) dginv[rho] = -ginv * dg[rho] * ginv;
    // dgu[rho][mu](nu, sig) = d_rho Gamma^mu_{nu sig}
    std::vector<std::vector<RMatrix>> dgu(d, std::vector<RMatrix>(d, RMatrix::Zero(d, d)));
    for (int rho = 0; rho < d; ++rho) {
        std::vector<RMatrix> dgl(d, RMatrix::Zero(d, d));
        for (int lam = 0; lam < d; ++lam)
            for (int nu = 0; nu < d; ++nu)
                for (int sig = 0; sig < d; ++sig)
                    dgl[lam](nu, sig) = 0.5 * (ddg[rho][nu](sig, lam) + ddg[rho][sig](nu, lam) -
                                               ddg[rho][lam](nu, sig));
        for (int mu = 0; mu < d; ++mu)
            for (int lam = 0; lam < d; ++lam) {
                if (dginv[rho](mu, lam) != 0.0) dgu[rho][mu] += dginv[rho](mu, lam) * gl[lam];
                if (ginv(mu, lam) != 0.0) dgu[rho][mu] += ginv(mu, lam) * dgl[lam];
            }
    }

    // Ric_{sig nu} = d_mu Gamma^mu_{nu sig} - d_nu Gamma^mu_{mu sig}
    //             + Gamma^mu_{mu lam} Gamma^lam_{nu sig} - Gamma^mu_{nu lam} Gamma^lam_{mu sig}
    RMatrix ric = RMatrix::Zero(d, d);
    for (int sig = 0; sig < d; ++sig)
        for (int nu = 0; nu < d; ++nu) {
            double acc = 0.0;
            for (int mu = 0; mu < d; ++mu) {
                acc += dgu[mu][mu](nu, sig) - dgu[nu][mu](mu, sig);
                for (int lam = 0; lam < d; ++lam)
                    acc += gu[mu](mu, lam) * gu[lam](nu, sig) - gu[mu](nu, lam) * gu[lam](mu, sig);
            }
            ric(sig, nu) = acc;
        }

    double scal = 0.0;
    for (int sig = 0; sig < d; ++sig)
        for (int nu = 0; nu < d; ++nu) scal += ginv(sig, nu) * ric(sig, nu);
    if (!std::isfinite(scal)) throw NumericalError("scalar_curvature_fd: non-finite result");
    return scal;
}

double scalar_curvature_fd(const MetricSpec& spec, const RVector& x, double h) {
    return scalar_curvature_fd([&spec](const RVector& y) { return chart_metric(spec, y, 0); }, x, h);
}

MCEstimate total_scalar_curvature_mc(const MetricSpec& spec, int n_samples, std::uint64_t seed,
                                     std::vector<CurvatureSample>* dump) {
    if (spec.manifold != Manifold::CPn)
        throw InvalidArgument("total_scalar_curvature_mc: spec must be a CPn metric");
    if (n_samples < 2) throw InvalidArgument("total_scalar_curvature_mc: need at least 2 samples");
    const int n = spec.n;
    const int dim_amb = n + 1;
    constexpr int kMaxRetries = 16;

    std::vector<double> scal(n_samples, 0.0);
    std::vector<CurvatureSample> recorded(dump ? n_samples : 0);
    std::vector<int> retries(n_samples, 0);

    parallel_for(n_samples, [&](int i) {
        StreamRng rng(seed, static_cast<std::uint64_t>(i));
        for (int attempt = 0;; ++attempt) {
            const CVector p = sample_unit_cvector(rng, dim_amb);
            int pivot = 0;
            if (std::abs(p(0)) < 0.05) {
                for (int k = 1; k < dim_amb; ++k)
                    if (std::abs(p(k)) > std::abs(p(pivot))) pivot = k;
            }
            CVector w(n);
            int idx = 0;
            for (int k = 0; k < dim_amb; ++k)
                if (k != pivot) w(idx++) = p(k) / p(pivot);
            RVector x(2 * n);
            for (int k = 0; k < n; ++k) {
                x(2 * k) = w(k).real();
                x(2 * k + 1) = w(k).imag();
            }
            try {
                const auto field = [&spec, pivot](const RVector& y) {
                    return chart_metric(spec, y, pivot);
                };
                const double s = scalar_curvature_fd(field, x);
                scal[i] = s;
                retries[i] = attempt;
                if (dump) recorded[i] = CurvatureSample{x, s, chart_metric(spec, x, pivot).determinant(), pivot};
                return;
            } catch (const NumericalError&) {
                if (attempt + 1 >= kMaxRetries) throw;
            }
        }
    });

    int total_retries = 0;
    for (int r : retries) total_retries += r;
    if (total_retries * 100 > n_samples)
        throw NumericalError("total_scalar_curvature_mc: more than 1% of draws failed");

    const double mean = pairwise_sum(scal) / n_samples;
    std::vector<double> dev2(n_samples);
    for (int i = 0; i < n_samples; ++i) dev2[i] = (scal[i] - mean) * (scal[i] - mean);
    const double var = pairwise_sum(dev2) / (n_samples - 1.0);

    double vol = 1.0; // vol(CP^n, FS) = pi^n / n!, unchanged by the deformation
    for (int k = 1; k <= n; ++k) vol *= std::numbers::pi / k;

    MCEstimate est;
    est.value = vol * mean;
    est.std_error = vol * std::sqrt(var / n_samples);
    est.n_samples = n_samples;
    est.seed = seed;
    est.resamples = total_retries;
    if (dump) *dump = std::move(recorded);
    return est;
}

} // namespace isospec
