#include "isospec/certify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <numbers>
#include <string_view>

#include "isospec/common.hpp"
#include "isospec/heatprobe.hpp"
#include "isospec/mat.hpp"
#include "isospec/metrics.hpp"
#include "isospec/parallel.hpp"
#include "isospec/rng.hpp"
#include "isospec/sampling.hpp"
#include "isospec/serialize.hpp"

namespace isospec {
namespace {

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::string fmt17(double v) { return fmt("%.17g", v); }

// Stable per-check seed: FNV-1a of the id folded into the run seed, so
// enabling or disabling one check never shifts the randomness of another.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view id) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const char c : id) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h ^ (seed * 0x9E3779B97F4A7C15ULL);
}

std::string iso_timestamp_utc() {
    const std::time_t tt = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// The standard family lives in su(3); for n > 4 it is embedded in the top
// left corner of su(n-1). Padding preserves su membership, isospectrality
// and the trace obstruction, but never genericity (the padded block
// commutes with everything supported on the complement).
JMapPair padded_family(double t, int m) {
    const JMapPair base = schueth_family(t);
    if (m == 3) return base;
    CMatrix a = CMatrix::Zero(m, m);
    CMatrix b = CMatrix::Zero(m, m);
    a.topLeftCorner(3, 3) = base.jZ1();
    b.topLeftCorner(3, 3) = base.jZ2();
    return JMapPair(a, b);
}

double zdiff(const ZValuedCovector& a, const ZValuedCovector& b) {
    return std::max(std::abs(a.c1 - b.c1), std::abs(a.c2 - b.c2));
}

double zmax(const ZValuedCovector& a) { return std::max(std::abs(a.c1), std::abs(a.c2)); }

double max_over_samples(int samples, std::uint64_t seed,
                        const std::function<double(StreamRng&)>& body) {
    std::vector<double> vals(static_cast<std::size_t>(samples), 0.0);
    parallel_for(samples, [&](int i) {
        StreamRng rng(seed, static_cast<std::uint64_t>(i));
        vals[static_cast<std::size_t>(i)] = body(rng);
    });
    return *std::max_element(vals.begin(), vals.end());
}

TangentVector orthogonalize_against(const SpherePoint& p, const TangentVector& X,
                                    const TangentVector& F1, const TangentVector& F2) {
    const double g11 = real_inner(F1.vec(), F1.vec());
    const double g12 = real_inner(F1.vec(), F2.vec());
    const double g22 = real_inner(F2.vec(), F2.vec());
    const double det = g11 * g22 - g12 * g12;
    if (!(det > 1e-12)) throw NumericalError("orthogonalize_against: degenerate orbit frame");
    const double x1 = real_inner(X.vec(), F1.vec());
    const double x2 = real_inner(X.vec(), F2.vec());
    const double a1 = (g22 * x1 - g12 * x2) / det;
    const double a2 = (g11 * x2 - g12 * x1) / det;
    return TangentVector(p, X.vec() - a1 * F1.vec() - a2 * F2.vec());
}

double rp_inner(const RpTangent& a, const RpTangent& b) {
    return real_inner(a.xp(), b.xp()) + real_inner(a.xq(), b.xq());
}

// Runs check bodies, translating any escape into a failed result so the
// certificate is always complete.
class Runner {
public:
    explicit Runner(const CertifyConfig& cfg) : cfg_(cfg) {}

    using Body = std::function<double(std::uint64_t seed, std::string& notes)>;

    void run(const std::string& id, double tol, int samples, const Body& body) {
        CheckResult r;
        r.id = id;
        r.tolerance = tol;
        r.samples = samples;
        r.seed = derive_seed(cfg_.seed, id);
        try {
            r.residual = body(r.seed, r.notes);
            r.status = r.residual <= r.tolerance ? CheckStatus::Pass : CheckStatus::Fail;
        } catch (const std::exception& e) {
            r.status = CheckStatus::Fail;
            r.residual = kErrorResidual;
            r.notes = std::string("error: ") + e.what();
        }
        results_.push_back(std::move(r));
    }

    // A check may compute its own tolerance (the statistical ones do).
    void run_dynamic(const std::string& id, int samples,
                     const std::function<double(std::uint64_t, double&, std::string&)>& body) {
        CheckResult r;
        r.id = id;
        r.samples = samples;
        r.seed = derive_seed(cfg_.seed, id);
        try {
            r.residual = body(r.seed, r.tolerance, r.notes);
            r.status = r.residual <= r.tolerance ? CheckStatus::Pass : CheckStatus::Fail;
        } catch (const std::exception& e) {
            r.status = CheckStatus::Fail;
            r.residual = kErrorResidual;
            r.notes = std::string("error: ") + e.what();
        }
        results_.push_back(std::move(r));
    }

    void skip(const std::string& id, double tol, const std::string& why) {
        CheckResult r;
        r.id = id;
        r.status = CheckStatus::Skipped;
        r.tolerance = tol;
        r.seed = derive_seed(cfg_.seed, id);
        r.notes = why;
        results_.push_back(std::move(r));
    }

    std::vector<CheckResult> take() { return std::move(results_); }

private:
    const CertifyConfig& cfg_;
    std::vector<CheckResult> results_;
};

std::vector<double> certification_t_grid(const CertifyConfig& cfg) {
    std::vector<double> ts;
    for (int k = 0; k < 20; ++k) ts.push_back(std::numbers::pi * k / 19.0);
    ts.push_back(cfg.t);
    ts.push_back(cfg.tprime);
    return ts;
}

std::vector<ZVector> z_half_circle(int count) {
    std::vector<ZVector> zs;
    zs.reserve(count);
    for (int k = 0; k < count; ++k) {
        const double th = std::numbers::pi * k / count;
        zs.push_back(ZVector{std::cos(th), std::sin(th)});
    }
    return zs;
}

} // namespace

std::string check_status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skipped: return "skipped";
    }
    return "unknown";
}

void validate_config(const CertifyConfig& cfg) {
    if (!std::isfinite(cfg.t) || !std::isfinite(cfg.tprime))
        throw ConfigError("t and tprime must be finite");
    if (cfg.n < 4) throw ConfigError("n must be at least 4");
    if (cfg.n > 16) throw ConfigError("n larger than 16 is not supported");
    if (cfg.mu.empty()) throw ConfigError("mu list must not be empty");
    for (const auto& mu : cfg.mu)
        if (mu.mu1 == 0 && mu.mu2 == 0) throw ConfigError("mu = (0,0) is not a valid direction");
    if (cfg.samples < 1) throw ConfigError("samples must be positive");
    if (cfg.heatprobe && cfg.mc_samples < 2) throw ConfigError("mc_samples must be at least 2");
}

CertifyConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const char* known[] = {"t",    "tprime",    "n",           "mu",
                                  "samples", "seed",  "heatprobe",   "mc_samples",
                                  "dump_curvature",   "out"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw ConfigError("unknown config key: " + it.key());
    }
    CertifyConfig cfg;
    try {
        if (j.contains("t")) cfg.t = j["t"].get<double>();
        if (j.contains("tprime")) cfg.tprime = j["tprime"].get<double>();
        if (j.contains("n")) cfg.n = j["n"].get<int>();
        if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("heatprobe")) cfg.heatprobe = j["heatprobe"].get<bool>();
        if (j.contains("mc_samples")) cfg.mc_samples = j["mc_samples"].get<int>();
        if (j.contains("dump_curvature")) cfg.dump_curvature = j["dump_curvature"].get<std::string>();
        if (j.contains("mu")) {
            cfg.mu.clear();
            for (const auto& entry : j["mu"]) {
                if (!entry.is_array() || entry.size() != 2)
                    throw ConfigError("mu entries must be [m1, m2] pairs");
                cfg.mu.push_back(DualWeight{entry[0].get<int>(), entry[1].get<int>()});
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    validate_config(cfg);
    return cfg;
}

Certificate run_certification(const CertifyConfig& cfg) {
    validate_config(cfg);
    const int n = cfg.n;
    const int m = n - 1;
    const JMapPair jt = padded_family(cfg.t, m);
    const JMapPair jtp = padded_family(cfg.tprime, m);
    const MetricSpec sphere_t(Manifold::Sphere, jt, n);
    const MetricSpec sphere_tp(Manifold::Sphere, jtp, n);
    const MetricSpec cpn_t(Manifold::CPn, jt, n);
    const MetricSpec cpn_tp(Manifold::CPn, jtp, n);
    const MetricSpec rp_t(Manifold::RPodd, jt, m);
    const MetricSpec rp_tp(Manifold::RPodd, jtp, m);

    Runner runner(cfg);

    // --- family invariants --------------------------------------------------

    const auto t_grid = certification_t_grid(cfg);
    const auto z_grid = z_half_circle(64);

    runner.run("family.char_poly", 1e-9, static_cast<int>(t_grid.size() * z_grid.size()),
               [&](std::uint64_t, std::string& notes) {
                   double worst = 0.0;
                   if (m == 3) {
                       notes = "coefficients compared against the cubic closed form";
                       for (const double t : t_grid) {
                           const JMapPair j = schueth_family(t);
                           for (const auto& Z : z_grid) {
                               const double a = Z.z1, b = Z.z2;
                               const CharPoly cp = char_poly(j.evaluate(Z));
                               const Complex expect[4] = {
                                   Complex(0.0, -(3.0 * a * a * b + 20.0 * b * b * b)),
                                   Complex(3.0 * a * a + 21.0 * b * b, 0.0), Complex(0.0, 0.0),
                                   Complex(1.0, 0.0)};
                               for (int k = 0; k < 4; ++k)
                                   worst = std::max(worst, std::abs(cp.coeffs[static_cast<std::size_t>(k)] - expect[k]));
                           }
                       }
                   } else {
                       notes = "padded family: coefficients compared across the t-grid";
                       std::vector<CharPoly> ref;
                       ref.reserve(z_grid.size());
                       for (const auto& Z : z_grid) ref.push_back(char_poly(jt.evaluate(Z)));
                       for (const double t : t_grid) {
                           const JMapPair j = padded_family(t, m);
                           for (std::size_t l = 0; l < z_grid.size(); ++l)
                               worst = std::max(worst,
                                                ref[l].max_coeff_distance(char_poly(j.evaluate(z_grid[l]))));
                       }
                   }
                   return worst;
               });

    runner.run("family.trace_obstruction", 1e-9, static_cast<int>(t_grid.size()),
               [&](std::uint64_t, std::string&) {
                   double worst = 0.0;
                   for (const double t : t_grid) {
                       const double expect = 1038.0 + 108.0 * std::cos(t) * std::cos(t);
                       worst = std::max(worst,
                                        std::abs(equivalence_obstruction(padded_family(t, m)) - expect));
                   }
                   return worst;
               });

    runner.run("family.genericity", 0.0, 2, [&](std::uint64_t, std::string& notes) {
        const bool g1 = is_generic(jt);
        const bool g2 = is_generic(jtp);
        notes = "generic(t)=" + std::string(g1 ? "yes" : "no") + ", generic(t')=" +
                std::string(g2 ? "yes" : "no");
        if (m > 3) notes += "; zero-padded families always have a nontrivial commutant";
        return static_cast<double>((g1 ? 0 : 1) + (g2 ? 0 : 1));
    });

    // --- the pair under certification ---------------------------------------

    runner.run("pair.isospectral", kPairTol, 64, [&](std::uint64_t, std::string&) {
        return is_isospectral_pair(jt, jtp, 64).max_residual;
    });

    runner.run("pair.nonequivalence_evidence", 0.0, 1, [&](std::uint64_t, std::string& notes) {
        const double o1 = equivalence_obstruction(jt);
        const double o2 = equivalence_obstruction(jtp);
        const double delta = std::abs(o1 - o2);
        const bool consistent =
            profiles_consistent(equivalence_invariant_profile(jt), equivalence_invariant_profile(jtp));
        notes = "obstruction(t)=" + fmt17(o1) + ", obstruction(t')=" + fmt17(o2) +
                ", |delta|=" + fmt17(delta) + "; invariant profiles consistent: " +
                (consistent ? "yes" : "no") +
                "; evidence only, not an isometry-group computation";
        return delta > 1e-6 ? 0.0 : 1.0;
    });

    // --- condition (I) transport ---------------------------------------------

    for (const auto& mu : cfg.mu) {
        char id[64];
        std::snprintf(id, sizeof id, "condition_I.mu(%d,%d)", mu.mu1, mu.mu2);
        runner.run(id, 1e-8, cfg.samples, [&, mu](std::uint64_t seed, std::string&) {
            return condition_I_check(jt, jtp, mu, cfg.samples, seed);
        });
    }

    // --- admissibility of the definitional forms ------------------------------

    runner.run("admissibility.lambda_torus_invariance", 1e-10, cfg.samples,
               [&](std::uint64_t seed, std::string&) {
                   return max_over_samples(cfg.samples, seed, [&](StreamRng& rng) {
                       const SpherePoint p = sample_sphere_point(rng, n);
                       const TangentVector X = sample_tangent(rng, p);
                       const double a = 2.0 * std::numbers::pi * rng.uniform();
                       const double b = 2.0 * std::numbers::pi * rng.uniform();
                       return zdiff(lambda_form(jt, p, X),
                                    lambda_form(jt, torus_act(a, b, p), torus_push(a, b, X)));
                   });
               });

    runner.run("admissibility.lambda_on_orbit_fields", 1e-10, cfg.samples,
               [&](std::uint64_t seed, std::string&) {
                   return max_over_samples(cfg.samples, seed, [&](StreamRng& rng) {
                       const SpherePoint p = sample_sphere_point(rng, n);
                       const ZVector Z{4.0 * (rng.uniform() - 0.5), 4.0 * (rng.uniform() - 0.5)};
                       return zmax(lambda_form(jt, p, z_star(Z, p)));
                   });
               });

    runner.run("admissibility.eta_s1_invariance", 1e-10, cfg.samples,
               [&](std::uint64_t seed, std::string&) {
                   return max_over_samples(cfg.samples, seed, [&](StreamRng& rng) {
                       const SpherePoint p = sample_sphere_point(rng, n);
                       const TangentVector X = sample_tangent(rng, p);
                       const Complex phase = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
                       const SpherePoint p2(n, phase * p.vec());
                       const TangentVector X2(p2, phase * X.vec());
                       return zdiff(eta_form(jt, p, X), eta_form(jt, p2, X2));
                   });
               });

    runner.run("admissibility.eta_torus_invariance", 1e-10, cfg.samples,
               [&](std::uint64_t seed, std::string&) {
                   return max_over_samples(cfg.samples, seed, [&](StreamRng& rng) {
                       const SpherePoint p = sample_sphere_point(rng, n);
                       const TangentVector X = sample_tangent(rng, p);
                       const double a = 2.0 * std::numbers::pi * rng.uniform();
                       const double b = 2.0 * std::numbers::pi * rng.uniform();
                       return zdiff(eta_form(jt, p, X),
                                    eta_form(jt, torus_act(a, b, p), torus_push(a, b, X)));
                   });
               });

    runner.run("admissibility.eta_on_vertical", 1e-10, cfg.samples,
               [&](std::uint64_t seed, std::string&) {
                   return max_over_samples(cfg.samples, seed, [&](StreamRng& rng) {
                       const SpherePoint p = sample_sphere_point(rng, n);
                       const TangentVector vertical(p, Complex(0.0, 1.0) * p.vec());
                       return zmax(eta_form(jt, p, vertical));
                   });
               });

    runner.run("admissibility.eta_on_orbit_horizontals", 1e-10, cfg.samples,
               [&](std::uint64_t seed, std::string&) {
                   return max_over_samples(cfg.samples, seed, [&](StreamRng& rng) {
                       const SpherePoint p = sample_m_hat_point(rng, n);
                       return std::max(zmax(eta_form(jt, p, z_star_hopf_horizontal(1, p))),
                                       zmax(eta_form(jt, p, z_star_hopf_horizontal(2, p))));
                   });
               });

    runner.run("admissibility.factorization", 1e-10, cfg.samples,
               [&](std::uint64_t seed, std::string&) {
                   return max_over_samples(cfg.samples, seed, [&](StreamRng& rng) {
                       const SpherePoint p = sample_m_hat_point(rng, n);
                       const TangentVector X = sample_hopf_horizontal(rng, p);
                       const TangentVector F1 = z_star_hopf_horizontal(1, p);
                       const TangentVector F2 = z_star_hopf_horizontal(2, p);
                       const auto lam = [&](const SpherePoint& q, const TangentVector& v) {
                           return lambda_form(jt, q, v);
                       };
                       const ZValuedCovector lhs = horizontalize(lam, p, X, F1, F2);
                       const double rr = std::norm(p.r());
                       const double ss = std::norm(p.s());
                       const ZValuedCovector eta = eta_form(jt, p, X);
                       return zdiff(lhs, ZValuedCovector{rr * ss * eta.c1, rr * ss * eta.c2});
                   });
               });

    // --- metric identities -----------------------------------------------------

    const auto volume_check = [&](const MetricSpec& s1, const MetricSpec& s2, bool horizontal) {
        return [&, horizontal](std::uint64_t seed, std::string&) {
            return max_over_samples(cfg.samples, seed, [&](StreamRng& rng) {
                const SpherePoint p = sample_m_hat_point(rng, n);
                const auto frame = horizontal ? hopf_horizontal_frame(p) : tangent_frame(p);
                const int d = static_cast<int>(frame.size());
                RMatrix base(d, d);
                for (int i = 0; i < d; ++i)
                    for (int k = 0; k <= i; ++k) {
                        base(i, k) = real_inner(frame[i].vec(), frame[k].vec());
                        base(k, i) = base(i, k);
                    }
                const double det0 = base.determinant();
                const double r1 = std::abs(gram(s1, p, frame).determinant() / det0 - 1.0);
                const double r2 = std::abs(gram(s2, p, frame).determinant() / det0 - 1.0);
                return std::max(r1, r2);
            });
        };
    };

    runner.run("metric.volume_sphere", 1e-10, cfg.samples, volume_check(sphere_t, sphere_tp, false));
    runner.run("metric.volume_cpn", 1e-10, cfg.samples, volume_check(cpn_t, cpn_tp, true));

    runner.run("metric.volume_rp", 1e-10, cfg.samples, [&](std::uint64_t seed, std::string&) {
        return max_over_samples(cfg.samples, seed, [&](StreamRng& rng) {
            const RpPoint pt = sample_rp_point(rng, m);
            const auto frame = rp_tangent_frame(pt);
            const int d = static_cast<int>(frame.size());
            RMatrix base(d, d);
            for (int i = 0; i < d; ++i)
                for (int k = 0; k <= i; ++k) {
                    base(i, k) = rp_inner(frame[i], frame[k]);
                    base(k, i) = base(i, k);
                }
            const double det0 = base.determinant();
            const double r1 = std::abs(gram(rp_t, pt, frame).determinant() / det0 - 1.0);
            const double r2 = std::abs(gram(rp_tp, pt, frame).determinant() / det0 - 1.0);
            return std::max(r1, r2);
        });
    });

    runner.run("metric.submersion_sphere", 1e-10, cfg.samples, [&](std::uint64_t seed, std::string&) {
        return max_over_samples(cfg.samples, seed, [&](StreamRng& rng) {
            const SpherePoint p = sample_m_hat_point(rng, n);
            const TangentVector F1 = z_star(ZVector{1.0, 0.0}, p);
            const TangentVector F2 = z_star(ZVector{0.0, 1.0}, p);
            double worst = 0.0;
            const TangentVector* fs[2] = {&F1, &F2};
            for (int i = 0; i < 2; ++i)
                for (int k = 0; k < 2; ++k)
                    worst = std::max(worst, std::abs(metric_eval(sphere_t, p, *fs[i], *fs[k]) -
                                                     real_inner(fs[i]->vec(), fs[k]->vec())));
            const TangentVector X = orthogonalize_against(p, sample_tangent(rng, p), F1, F2);
            const TangentVector Y = orthogonalize_against(p, sample_tangent(rng, p), F1, F2);
            const ZValuedCovector lx = lambda_form(jt, p, X);
            const ZValuedCovector ly = lambda_form(jt, p, Y);
            const TangentVector Xh(p, X.vec() - lx.c1 * F1.vec() - lx.c2 * F2.vec());
            const TangentVector Yh(p, Y.vec() - ly.c1 * F1.vec() - ly.c2 * F2.vec());
            worst = std::max(worst, std::abs(metric_eval(sphere_t, p, Xh, Yh) -
                                             real_inner(X.vec(), Y.vec())));
            return worst;
        });
    });

    runner.run("metric.submersion_cpn", 1e-10, cfg.samples, [&](std::uint64_t seed, std::string&) {
        return max_over_samples(cfg.samples, seed, [&](StreamRng& rng) {
            const SpherePoint p = sample_m_hat_point(rng, n);
            const TangentVector F1 = z_star_hopf_horizontal(1, p);
            const TangentVector F2 = z_star_hopf_horizontal(2, p);
            double worst = 0.0;
            const TangentVector* fs[2] = {&F1, &F2};
            for (int i = 0; i < 2; ++i)
                for (int k = 0; k < 2; ++k)
                    worst = std::max(worst, std::abs(metric_eval(cpn_t, p, *fs[i], *fs[k]) -
                                                     real_inner(fs[i]->vec(), fs[k]->vec())));
            const TangentVector X =
                orthogonalize_against(p, sample_hopf_horizontal(rng, p), F1, F2);
            const TangentVector Y =
                orthogonalize_against(p, sample_hopf_horizontal(rng, p), F1, F2);
            const ZValuedCovector ex = eta_form(jt, p, X);
            const ZValuedCovector ey = eta_form(jt, p, Y);
            const TangentVector Xh(p, X.vec() - ex.c1 * F1.vec() - ex.c2 * F2.vec());
            const TangentVector Yh(p, Y.vec() - ey.c1 * F1.vec() - ey.c2 * F2.vec());
            worst = std::max(worst, std::abs(metric_eval(cpn_t, p, Xh, Yh) -
                                             real_inner(X.vec(), Y.vec())));
            return worst;
        });
    });

    runner.run("metric.submersion_rp", 1e-10, cfg.samples, [&](std::uint64_t seed, std::string&) {
        return max_over_samples(cfg.samples, seed, [&](StreamRng& rng) {
            RpPoint pt = sample_rp_point(rng, m);
            while (pt.p().norm() < 0.1 || std::abs(pt.q()) < 0.1) pt = sample_rp_point(rng, m);
            const RpTangent F1 = rp_z_star(ZVector{1.0, 0.0}, pt);
            const RpTangent F2 = rp_z_star(ZVector{0.0, 1.0}, pt);
            double worst = 0.0;
            const RpTangent* fs[2] = {&F1, &F2};
            for (int i = 0; i < 2; ++i)
                for (int k = 0; k < 2; ++k)
                    worst = std::max(worst, std::abs(metric_eval(rp_t, pt, *fs[i], *fs[k]) -
                                                     rp_inner(*fs[i], *fs[k])));
            // Orbit-orthogonal part of a random tangent, then the deformation
            // correction; the pushed metric must give back the flat pairing.
            const auto orth = [&](RpTangent X) {
                const double a1 = rp_inner(X, F1) / rp_inner(F1, F1);
                const double a2 = rp_inner(X, F2) / rp_inner(F2, F2);
                return RpTangent(pt, X.xp() - a1 * F1.xp() - a2 * F2.xp(),
                                 X.xq() - a1 * F1.xq() - a2 * F2.xq());
            };
            const RpTangent X = orth(sample_rp_tangent(rng, pt));
            const RpTangent Y = orth(sample_rp_tangent(rng, pt));
            const ZValuedCovector lx = rp_lambda(jt, pt, X);
            const ZValuedCovector ly = rp_lambda(jt, pt, Y);
            const RpTangent Xh(pt, X.xp() - lx.c1 * F1.xp() - lx.c2 * F2.xp(),
                               X.xq() - lx.c1 * F1.xq() - lx.c2 * F2.xq());
            const RpTangent Yh(pt, Y.xp() - ly.c1 * F1.xp() - ly.c2 * F2.xp(),
                               Y.xq() - ly.c1 * F1.xq() - ly.c2 * F2.xq());
            worst = std::max(worst, std::abs(metric_eval(rp_t, pt, Xh, Yh) - rp_inner(X, Y)));
            return worst;
        });
    });

    runner.run("metric.zh_gram", 1e-12, cfg.samples, [&](std::uint64_t seed, std::string&) {
        return max_over_samples(cfg.samples, seed, [&](StreamRng& rng) {
            const SpherePoint p = sample_m_hat_point(rng, n);
            const TangentVector F1 = z_star_hopf_horizontal(1, p);
            const TangentVector F2 = z_star_hopf_horizontal(2, p);
            const double rr = std::norm(p.r());
            const double ss = std::norm(p.s());
            double worst = std::abs(real_inner(F1.vec(), F1.vec()) - rr * (1.0 - rr));
            worst = std::max(worst, std::abs(real_inner(F2.vec(), F2.vec()) - ss * (1.0 - ss)));
            worst = std::max(worst, std::abs(real_inner(F1.vec(), F2.vec()) + rr * ss));
            return worst;
        });
    });

    runner.run("metric.orbit_area", 1e-12, cfg.samples, [&](std::uint64_t seed, std::string&) {
        return max_over_samples(cfg.samples, seed, [&](StreamRng& rng) {
            const SpherePoint p = sample_m_hat_point(rng, n);
            const TangentVector F1 = z_star_hopf_horizontal(1, p);
            const TangentVector F2 = z_star_hopf_horizontal(2, p);
            const double g11 = real_inner(F1.vec(), F1.vec());
            const double g12 = real_inner(F1.vec(), F2.vec());
            const double g22 = real_inner(F2.vec(), F2.vec());
            return std::abs(orbit_area_sq(p) - (g11 * g22 - g12 * g12));
        });
    });

    runner.run("metric.orbit_angle", 1e-12, cfg.samples, [&](std::uint64_t seed, std::string&) {
        return max_over_samples(cfg.samples, seed, [&](StreamRng& rng) {
            const double a = 0.1 + 0.5 * rng.uniform();
            const SpherePoint p = sample_level_point(rng, n, a);
            const TangentVector F1 = z_star_hopf_horizontal(1, p);
            const TangentVector F2 = z_star_hopf_horizontal(2, p);
            const double cosang =
                real_inner(F1.vec(), F2.vec()) /
                std::sqrt(real_inner(F1.vec(), F1.vec()) * real_inner(F2.vec(), F2.vec()));
            return std::abs(std::acos(cosang) - orbit_angle(a));
        });
    });

    // --- derivative oracles ------------------------------------------------------

    runner.run("derivative.d_eta_fd", 1e-6, cfg.samples, [&](std::uint64_t seed, std::string&) {
        const double h = 1e-5;
        return max_over_samples(cfg.samples, seed, [&](StreamRng& rng) {
            const SpherePoint p = sample_sphere_point(rng, n);
            const TangentVector X = sample_tangent(rng, p);
            const TangentVector Y = sample_tangent(rng, p);
            const auto d_fd = [&](int k) {
                const CVector& pv = p.vec();
                const ZValuedCovector ya = eta_form_ambient(jt, pv + h * X.vec(), Y.vec());
                const ZValuedCovector yb = eta_form_ambient(jt, pv - h * X.vec(), Y.vec());
                const ZValuedCovector xa = eta_form_ambient(jt, pv + h * Y.vec(), X.vec());
                const ZValuedCovector xb = eta_form_ambient(jt, pv - h * Y.vec(), X.vec());
                const double dy = (k == 1 ? ya.c1 - yb.c1 : ya.c2 - yb.c2) / (2.0 * h);
                const double dx = (k == 1 ? xa.c1 - xb.c1 : xa.c2 - xb.c2) / (2.0 * h);
                return dy - dx;
            };
            const ZValuedCovector closed = d_eta(jt, p, X, Y);
            const double r1 = std::abs(d_fd(1) - closed.c1) / std::max(1.0, std::abs(closed.c1));
            const double r2 = std::abs(d_fd(2) - closed.c2) / std::max(1.0, std::abs(closed.c2));
            return std::max(r1, r2);
        });
    });

    runner.run("derivative.d_eta_restricted", 1e-10, cfg.samples,
               [&](std::uint64_t seed, std::string&) {
                   return max_over_samples(cfg.samples, seed, [&](StreamRng& rng) {
                       const double a = 0.15 + 0.45 * rng.uniform();
                       const SpherePoint p = sample_level_point(rng, n, a);
                       const TangentVector X = sample_level_tangent(rng, p);
                       const TangentVector Y = sample_level_tangent(rng, p);
                       return zdiff(d_eta(jt, p, X, Y), d_eta_restricted(jt, p, X, Y));
                   });
               });

    runner.run("derivative.d_omega0_level", 1e-6, cfg.samples, [&](std::uint64_t seed, std::string&) {
        const double h = 1e-5;
        return max_over_samples(cfg.samples, seed, [&](StreamRng& rng) {
            const double a = 0.15 + 0.45 * rng.uniform();
            const SpherePoint p = sample_level_point(rng, n, a);
            const TangentVector X = sample_level_tangent(rng, p);
            const TangentVector Y = sample_level_tangent(rng, p);
            const CVector& pv = p.vec();
            const ZValuedCovector ya = omega0_ambient(pv + h * X.vec(), Y.vec());
            const ZValuedCovector yb = omega0_ambient(pv - h * X.vec(), Y.vec());
            const ZValuedCovector xa = omega0_ambient(pv + h * Y.vec(), X.vec());
            const ZValuedCovector xb = omega0_ambient(pv - h * Y.vec(), X.vec());
            const double d1 = (ya.c1 - yb.c1 - xa.c1 + xb.c1) / (2.0 * h);
            const double d2 = (ya.c2 - yb.c2 - xa.c2 + xb.c2) / (2.0 * h);
            return std::max(std::abs(d1), std::abs(d2));
        });
    });

    // --- projective quotients ------------------------------------------------------

    runner.run("rp.antipodal_lambda", 1e-14, cfg.samples, [&](std::uint64_t seed, std::string&) {
        return max_over_samples(cfg.samples, seed, [&](StreamRng& rng) {
            const RpPoint pt = sample_rp_point(rng, m);
            const RpTangent X = sample_rp_tangent(rng, pt);
            return std::max(
                zdiff(rp_lambda(jt, pt, X), rp_lambda(jt, rp_antipode(pt), rp_antipode_push(X))),
                zdiff(rp_lambda(jtp, pt, X), rp_lambda(jtp, rp_antipode(pt), rp_antipode_push(X))));
        });
    });

    runner.run("rp.admissibility", 1e-10, cfg.samples, [&](std::uint64_t seed, std::string&) {
        return max_over_samples(cfg.samples, seed, [&](StreamRng& rng) {
            const RpPoint pt = sample_rp_point(rng, m);
            const ZVector Z{4.0 * (rng.uniform() - 0.5), 4.0 * (rng.uniform() - 0.5)};
            double worst = zmax(rp_lambda(jt, pt, rp_z_star(Z, pt)));
            const RpTangent X = sample_rp_tangent(rng, pt);
            const double a = 2.0 * std::numbers::pi * rng.uniform();
            const double b = 2.0 * std::numbers::pi * rng.uniform();
            const Complex ea = std::polar(1.0, a);
            const Complex eb = std::polar(1.0, b);
            const RpPoint pt2(ea * pt.p(), eb * pt.q());
            const RpTangent X2(pt2, ea * X.xp(), eb * X.xq());
            worst = std::max(worst, zdiff(rp_lambda(jt, pt, X), rp_lambda(jt, pt2, X2)));
            return worst;
        });
    });

    // --- heat-invariant probe --------------------------------------------------------

    if (!cfg.heatprobe) {
        const std::string why = "enable with --heatprobe";
        runner.skip("heatprobe.fs_chart", 1e-9, why);
        runner.skip("heatprobe.volume_element", 1e-8, why);
        runner.skip("heatprobe.scal_constancy", 1e-4, why);
        runner.skip("heatprobe.total_scal_agreement", 0.0, why);
    } else {
        const JMapPair j0(CMatrix::Zero(m, m), CMatrix::Zero(m, m));
        const MetricSpec cpn_flat(Manifold::CPn, j0, n);

        runner.run("heatprobe.fs_chart", 1e-9, 50, [&](std::uint64_t seed, std::string&) {
            return max_over_samples(50, seed, [&](StreamRng& rng) {
                CVector w(n);
                for (int k = 0; k < n; ++k) w(k) = 0.8 * Complex(rng.normal(), rng.normal());
                RVector x(2 * n);
                for (int k = 0; k < n; ++k) {
                    x(2 * k) = w(k).real();
                    x(2 * k + 1) = w(k).imag();
                }
                const RMatrix a = chart_metric(cpn_flat, x, 0);
                const RMatrix b = fubini_study_chart(w);
                return (a - b).cwiseAbs().maxCoeff();
            });
        });

        runner.run("heatprobe.volume_element", 1e-8, cfg.samples,
                   [&](std::uint64_t seed, std::string&) {
                       return max_over_samples(cfg.samples, seed, [&](StreamRng& rng) {
                           CVector w(n);
                           for (int k = 0; k < n; ++k) w(k) = 0.8 * Complex(rng.normal(), rng.normal());
                           RVector x(2 * n);
                           for (int k = 0; k < n; ++k) {
                               x(2 * k) = w(k).real();
                               x(2 * k + 1) = w(k).imag();
                           }
                           const double fs = fubini_study_chart(w).determinant();
                           const double r1 = std::abs(chart_metric(cpn_t, x, 0).determinant() / fs - 1.0);
                           const double r2 = std::abs(chart_metric(cpn_tp, x, 0).determinant() / fs - 1.0);
                           return std::max(r1, r2);
                       });
                   });

        runner.run("heatprobe.scal_constancy", 1e-4, 8, [&](std::uint64_t seed, std::string& notes) {
            StreamRng rng(seed, 0);
            const double ref = scalar_curvature_fd(cpn_flat, RVector::Zero(2 * n));
            notes = "measured constant = " + fmt17(ref);
            double worst = 0.0;
            for (int i = 0; i < 7; ++i) {
                RVector x(2 * n);
                for (int k = 0; k < 2 * n; ++k) x(k) = 0.5 * rng.normal();
                worst = std::max(worst, std::abs(scalar_curvature_fd(cpn_flat, x) - ref) / std::abs(ref));
            }
            return worst;
        });

        runner.run_dynamic("heatprobe.total_scal_agreement", cfg.mc_samples,
                           [&](std::uint64_t seed, double& tol, std::string& notes) {
                               std::vector<CurvatureSample> dump;
                               std::vector<CurvatureSample>* dump_ptr =
                                   cfg.dump_curvature.empty() ? nullptr : &dump;
                               const MCEstimate e1 =
                                   total_scalar_curvature_mc(cpn_t, cfg.mc_samples, seed, dump_ptr);
                               const MCEstimate e2 =
                                   total_scalar_curvature_mc(cpn_tp, cfg.mc_samples, seed, nullptr);
                               tol = 3.0 * std::hypot(e1.std_error, e2.std_error);
                               notes = "t: value=" + fmt17(e1.value) + " se=" + fmt17(e1.std_error) +
                                       " resamples=" + std::to_string(e1.resamples) +
                                       "; t': value=" + fmt17(e2.value) + " se=" + fmt17(e2.std_error) +
                                       " resamples=" + std::to_string(e2.resamples) +
                                       "; common random numbers, tolerance = 3 combined se";
                               if (dump_ptr) {
                                   std::ofstream csv(cfg.dump_curvature);
                                   if (!csv) throw Error("cannot open " + cfg.dump_curvature);
                                   for (int k = 0; k < 2 * n; ++k) csv << "x" << k << ",";
                                   csv << "scal,det\n";
                                   for (const auto& smp : dump) {
                                       for (int k = 0; k < 2 * n; ++k) csv << fmt17(smp.x(k)) << ",";
                                       csv << fmt17(smp.scal) << "," << fmt17(smp.det_g) << "\n";
                                   }
                               }
                               return std::abs(e1.value - e2.value);
                           });
    }

    Certificate cert;
    cert.timestamp = iso_timestamp_utc();
    cert.config = cfg;
    cert.checks = runner.take();
    cert.pass = true;
    for (const auto& c : cert.checks) {
        if (c.status == CheckStatus::Fail) cert.pass = false;
        if (c.id == "pair.nonequivalence_evidence" && c.status == CheckStatus::Fail)
            cert.notes = "pair not certified non-equivalent";
    }
    return cert;
}

nlohmann::ordered_json certificate_to_json(const Certificate& cert) {
    nlohmann::ordered_json j;
    j["version"] = cert.version;
    j["timestamp"] = cert.timestamp;
    nlohmann::ordered_json cfg;
    cfg["t"] = cert.config.t;
    cfg["tprime"] = cert.config.tprime;
    cfg["n"] = cert.config.n;
    nlohmann::ordered_json mus = nlohmann::ordered_json::array();
    for (const auto& mu : cert.config.mu) mus.push_back({mu.mu1, mu.mu2});
    cfg["mu"] = std::move(mus);
    cfg["samples"] = cert.config.samples;
    cfg["seed"] = cert.config.seed;
    cfg["heatprobe"] = cert.config.heatprobe;
    cfg["mc_samples"] = cert.config.mc_samples;
    cfg["dump_curvature"] = cert.config.dump_curvature;
    j["config"] = std::move(cfg);
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : cert.checks) {
        nlohmann::ordered_json e;
        e["id"] = c.id;
        e["status"] = check_status_name(c.status);
        e["residual"] = c.residual;
        e["tolerance"] = c.tolerance;
        e["samples"] = c.samples;
        e["seed"] = c.seed;
        e["notes"] = c.notes;
        checks.push_back(std::move(e));
    }
    j["checks"] = std::move(checks);
    j["verdict"] = cert.pass ? "pass" : "fail";
    j["notes"] = cert.notes;
    return j;
}

int emit_report(const Certificate& cert, const std::string& path) {
    if (!path.empty()) {
        try {
            save_json_file(path, certificate_to_json(cert));
        } catch (const Error& e) {
            // a verdict with no artifact is a failed run, whatever the checks said
            std::fprintf(stderr, "emit_report: %s\n", e.what());
            return 2;
        }
    }
    return cert.pass ? 0 : 2;
}

} // namespace isospec
