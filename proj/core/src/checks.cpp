#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "rolldist/distribution.hpp"
#include "rolldist/errors.hpp"
#include "rolldist/scenario.hpp"

namespace rolldist {

namespace {

std::string fmt_g(double x, int prec = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    return buf;
}

std::string fmt_c(cplx z) {
    if (z.imag() == 0.0) return fmt_g(z.real());
    return fmt_g(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt_g(std::abs(z.imag())) + "i";
}

struct PointOutcome {
    bool ok = false;
    double residual = 0.0;
    std::string skip_reason;
    std::string location;
};

// Runs `eval` over [0, n) on `jobs` threads; the reduction is serial and
// index-ordered, so results are independent of the thread count.
CheckResult sweep(const std::string& name, double tol, std::size_t n, int jobs,
                  const std::function<PointOutcome(std::size_t)>& eval) {
    std::vector<PointOutcome> out(n);
    auto worker = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            try {
                out[i] = eval(i);
            } catch (const Error& e) {
                out[i].ok = false;
                out[i].skip_reason = error_kind_name(e.kind());
            }
        }
    };
    if (jobs <= 1 || n < 2) {
        worker(0, n);
    } else {
        std::size_t nt = std::min<std::size_t>(jobs, n);
        std::vector<std::thread> pool;
        std::size_t chunk = (n + nt - 1) / nt;
        for (std::size_t t = 0; t < nt; ++t)
            pool.emplace_back(worker, t * chunk, std::min(n, (t + 1) * chunk));
        for (auto& th : pool) th.join();
    }

    CheckResult r;
    r.name = name;
    r.tolerance = tol;
    for (const auto& p : out) {
        if (!p.ok) {
            ++r.skipped;
            ++r.skip_reasons[p.skip_reason.empty() ? "unspecified" : p.skip_reason];
            continue;
        }
        ++r.points;
        if (p.residual > r.max_residual || r.max_location.empty()) {
            r.max_residual = p.residual;
            r.max_location = p.location;
        }
    }
    return r;
}

PfaffianSystem constructed_system(std::size_t idx);

struct Runner {
    const Scenario& s;
    int jobs;
    std::vector<std::pair<std::string, SurfacePatch>> partners;
    std::optional<TangencyDistribution> dist;
    std::vector<cplx> gu, gv, gw1, gw2;

    explicit Runner(const Scenario& sc, int j) : s(sc), jobs(j) {
        if (s.partner_name == "associate") {
            for (double th : s.thetas)
                partners.emplace_back("associate(" + fmt_g(th) + ")",
                                      builtin_surface("associate", {th}));
        } else if (s.partner) {
            partners.emplace_back(s.partner_name, *s.partner);
        }
        for (int k = 0; k < 4; ++k) {
            const GridSpec& g = s.grid[k];
            std::vector<cplx> vals;
            for (int i = 0; i < g.count; ++i) {
                double x = g.count == 1 ? g.lo
                                        : g.lo + (g.hi - g.lo) * i / double(g.count - 1);
                vals.push_back(cplx(x, 0.0));
            }
            (k == 0 ? gu : k == 1 ? gv : k == 2 ? gw1 : gw2) = vals;
        }
        if (s.complex_sampling) {
            // Deterministic per-slot perturbations off the real locus.
            std::size_t slot = 0;
            for (auto* grid : {&gu, &gv, &gw1, &gw2})
                for (auto& z : *grid) {
                    std::mt19937_64 rng(s.rng_seed * 0x9e3779b97f4a7c15ull + ++slot);
                    std::uniform_real_distribution<double> u(-1.0, 1.0);
                    z += cplx(0.0, 1e-2 * u(rng));
                }
        }
    }

    void need_partner(const std::string& check) const {
        if (partners.empty())
            fail(ErrorKind::ScenarioSyntaxError,
                 "check '" + check + "' needs a partner surface");
    }

    const TangencyDistribution& distribution() {
        if (!dist) {
            if (!s.v_text || !s.m_text)
                fail(ErrorKind::ScenarioSyntaxError,
                     "distribution checks need V.x/.y/.z and m");
            std::vector<std::array<cplx, 4>> samples;
            for (std::size_t i = 0; i < 5; ++i)
                samples.push_back({gu[i % gu.size()], gv[(i / 2) % gv.size()],
                                   gw1[i % gw1.size()], gw2[(i / 3) % gw2.size()]});
            Bindings consts = s.seed.consts;
            dist = make_distribution(s.seed, *s.v_text, *s.m_text, samples, consts);
        }
        return *dist;
    }

    // --- surface-pair checks: (partner, u, v) ------------------------

    CheckResult pair_sweep(const std::string& name, double tol,
                           const std::function<double(const RollingPair&, cplx, cplx)>& f) {
        need_partner(name);
        std::size_t nu = gu.size(), nv = gv.size();
        std::size_t n = partners.size() * nu * nv;
        return sweep(name, tol, n, jobs, [&](std::size_t i) {
            std::size_t p = i / (nu * nv), rest = i % (nu * nv);
            cplx u = gu[rest / nv], v = gv[rest % nv];
            RollingPair pair{s.seed, partners[p].second};
            PointOutcome o;
            o.residual = f(pair, u, v);
            o.ok = true;
            o.location = "partner=" + partners[p].first + " u=" + fmt_c(u) + " v=" + fmt_c(v);
            return o;
        });
    }

    // --- distribution checks: (omega-corpus entry, u, v, w1, w2) -----

    // corpus index 0 = rigid rolling (omega = 0); 1.. = partners.
    std::size_t corpus_size(bool include_rigid) const {
        return partners.size() + (include_rigid ? 1 : 0);
    }

    std::string corpus_label(std::size_t c, bool include_rigid) const {
        if (include_rigid) {
            if (c == 0) return "rigid";
            return partners[c - 1].first;
        }
        return partners[c].first;
    }

    // Evaluates omega for corpus entry c at (u, v); returns false when
    // the entry is the rigid one.
    bool corpus_omega(std::size_t c, bool include_rigid, cplx u, cplx v, VectorForm& omega) const {
        std::size_t p;
        if (include_rigid) {
            if (c == 0) return false;
            p = c - 1;
        } else {
            p = c;
        }
        RollingPair pair{s.seed, partners[p].second};
        omega = roll_at(pair, u, v).omega;
        return true;
    }

    CheckResult dist_sweep(const std::string& name, double tol, bool include_rigid,
                           const std::function<PointOutcome(const TangencyDistribution&,
                                                            const std::array<cplx, 4>&,
                                                            const VectorForm*)>& f) {
        const TangencyDistribution& td = distribution();
        if (!include_rigid && partners.empty()) need_partner(name);
        std::size_t nc = corpus_size(include_rigid);
        std::size_t nu = gu.size(), nv = gv.size(), n1 = gw1.size(), n2 = gw2.size();
        std::size_t n = nc * nu * nv * n1 * n2;
        return sweep(name, tol, n, jobs, [&](std::size_t i) {
            std::size_t c = i / (nu * nv * n1 * n2), rest = i % (nu * nv * n1 * n2);
            cplx u = gu[rest / (nv * n1 * n2)];
            rest %= nv * n1 * n2;
            cplx v = gv[rest / (n1 * n2)];
            rest %= n1 * n2;
            std::array<cplx, 4> pt{u, v, gw1[rest / n2], gw2[rest % n2]};
            VectorForm omega(1);
            bool has = corpus_omega(c, include_rigid, u, v, omega);
            PointOutcome o = f(td, pt, has ? &omega : nullptr);
            o.location = "omega=" + corpus_label(c, include_rigid) + " u=" + fmt_c(u) +
                         " v=" + fmt_c(v) + " w1=" + fmt_c(pt[2]) + " w2=" + fmt_c(pt[3]);
            return o;
        });
    }

    CheckResult run(const std::string& name) {
        double tol = default_tolerance(name);
        if (auto it = s.tol_overrides.find(name); it != s.tol_overrides.end())
            tol = it->second;

        if (name == "isometry")
            return pair_sweep(name, tol, [](const RollingPair& p, cplx u, cplx v) {
                return isometry_residual(p, u, v);
            });
        if (name == "rolling-identities")
            return pair_sweep(name, tol, [](const RollingPair& p, cplx u, cplx v) {
                RollingData d = roll_at(p, u, v);
                return std::max({rotation_residual(d), translation_residual(d),
                                 alpha_omega_residual(d), secoi_residual(d),
                                 dx0_symmetric_residual(d)});
            });
        if (name == "flatness")
            return pair_sweep(name, tol, [](const RollingPair& p, cplx u, cplx v) {
                return flatness_residuals(roll_at(p, u, v)).max();
            });
        if (name == "omjk")
            return pair_sweep(name, tol, [](const RollingPair& p, cplx u, cplx v) {
                RollingData d = roll_at(p, u, v);
                SecondFormDifference sf = second_form_difference(d);
                return std::max(omega_reconstruction_residual(d),
                                std::abs(sf.s12 - sf.s21));
            });
        if (name == "omom")
            return pair_sweep(name, tol, [](const RollingPair& p, cplx u, cplx v) {
                return gauss_identity_residual(roll_at(p, u, v));
            });
        if (name == "omprime")
            return pair_sweep(name, tol, [](const RollingPair& p, cplx u, cplx v) {
                RollingData d = roll_at(p, u, v);
                return std::max(other_face_residual(d),
                                flatness_residuals(d, other_face_form(d)).max());
            });
        if (name == "aom")
            return pair_sweep(name, tol, [](const RollingPair& p, cplx u, cplx v) {
                RollingData d = roll_at(p, u, v);
                VectorForm a = symmetric_kernel_form(d.f0);
                return std::max(symmetric_product_residual(d.f0, a),
                                std::abs(one_form_wedge_omega(a, d.omega)));
            });

        if (name == "dw2-oracle")
            return dist_sweep(name, tol, true,
                              [](const TangencyDistribution& td, const std::array<cplx, 4>& pt,
                                 const VectorForm* om) {
                                  PointOutcome o;
                                  o.residual = dw2_oracle_residual(dist_at(td, pt, om));
                                  o.ok = true;
                                  return o;
                              });
        if (name == "compatibility")
            return dist_sweep(name, tol, false,
                              [](const TangencyDistribution& td, const std::array<cplx, 4>& pt,
                                 const VectorForm* om) {
                                  PointOutcome o;
                                  DistData with = dist_at(td, pt, om);
                                  DistData rigid = dist_at(td, pt, nullptr);
                                  double indep = (compatibility_form(with) -
                                                  compatibility_form(rigid))
                                                     .max_coeff_magnitude();
                                  o.residual = std::max(
                                      {indep, dw2_integrability_residual(with),
                                       dw2_integrability_residual(rigid)});
                                  o.ok = true;
                                  return o;
                              });
        if (name == "b1")
            return dist_sweep(name, tol, true,
                              [](const TangencyDistribution& td, const std::array<cplx, 4>& pt,
                                 const VectorForm* om) {
                                  PointOutcome o;
                                  DistData d = dist_at(td, pt, om);
                                  if (b1_wedge_condition_residual(d) > 1e-8) {
                                      o.skip_reason = "ConditionNotMet";
                                      return o;
                                  }
                                  o.residual = std::abs(b1_closed_form(d) -
                                                        b1_closed_form(d, true));
                                  o.ok = true;
                                  return o;
                              });
        if (name == "splitting")
            return dist_sweep(name, tol, true,
                              [](const TangencyDistribution& td, const std::array<cplx, 4>& pt,
                                 const VectorForm* om) {
                                  PointOutcome o;
                                  DistData d = dist_at(td, pt, om);
                                  if (b1_wedge_condition_residual(d) > 1e-8) {
                                      o.skip_reason = "ConditionNotMet";
                                      return o;
                                  }
                                  o.residual = splitting_residual(d, b1_closed_form(d));
                                  o.ok = true;
                                  return o;
                              });
        if (name == "exchange")
            return dist_sweep(name, tol, true,
                              [](const TangencyDistribution& td, const std::array<cplx, 4>& pt,
                                 const VectorForm* om) {
                                  PointOutcome o;
                                  ExchangeResiduals er = exchange_covariance(td, pt, om);
                                  o.residual = std::max(er.ratio_law, er.b1_invariance);
                                  o.ok = true;
                                  return o;
                              });
        if (name == "frobenius" || name == "holonomy") {
            // Engine validation on constructed integrable systems swept
            // over the 4-dimensional grid (the corpus distributions need
            // not be integrable themselves).
            bool holo = name == "holonomy";
            std::size_t nu = gu.size(), nv = gv.size(), n1 = gw1.size(), n2 = gw2.size();
            std::size_t nsys = 3;
            std::size_t n = nsys * nu * nv * n1 * n2;
            return sweep(name, tol, n, jobs, [&, holo](std::size_t i) {
                std::size_t sidx = i / (nu * nv * n1 * n2), rest = i % (nu * nv * n1 * n2);
                cplx u = gu[rest / (nv * n1 * n2)];
                rest %= nv * n1 * n2;
                cplx v = gv[rest / (n1 * n2)];
                rest %= n1 * n2;
                std::array<cplx, 4> pt{u, v, gw1[rest / n2], gw2[rest % n2]};
                PfaffianSystem sys = constructed_system(sidx);
                PointOutcome o;
                if (!holo) {
                    auto r = frobenius_residual(sys, pt);
                    o.residual = std::max(r[0], r[1]);
                } else {
                    double h = 0.1;
                    std::vector<std::array<cplx, 2>> loop = {
                        {pt[0], pt[1]},         {pt[0] + h, pt[1]},
                        {pt[0] + h, pt[1] + h}, {pt[0], pt[1] + h},
                        {pt[0], pt[1]},
                    };
                    o.residual = integrate_leaf(sys, pt, loop).holonomy;
                }
                o.ok = true;
                o.location = "system=" + std::to_string(sidx) + " u=" + fmt_c(u) +
                             " v=" + fmt_c(v) + " w1=" + fmt_c(pt[2]) +
                             " w2=" + fmt_c(pt[3]);
                return o;
            });
        }
        fail(ErrorKind::UnknownCheckName, "no such check: " + name);
    }
};

// Three integrable references: the coordinate foliation, an exact
// decoupled system, and an exponentially coupled one.
PfaffianSystem constructed_system(std::size_t idx) {
    PfaffianSystem sys;
    sys.phi = [idx](const std::array<cplx, 4>& pt) {
        ScalarForm p1(1), p2(1);
        Jet ju = Jet::variable(0, pt[0], 2);
        Jet jv = Jet::variable(1, pt[1], 2);
        Jet jw1 = Jet::variable(2, pt[2], 2);
        Jet jw2 = Jet::variable(3, pt[3], 2);
        if (idx == 1) {
            p1.c[0] = sin(ju);
            p2.c[1] = cos(jv);
        } else if (idx == 2) {
            p1.c[0] = jw1;
            p2.c[1] = jw2;
        }
        return std::array<ScalarForm, 2>{p1, p2};
    };
    return sys;
}

} // namespace

Report run_checks(const Scenario& s, int jobs) {
    Runner r(s, jobs);
    Report rep;
    rep.scenario = s.name;
    rep.rng_seed = s.rng_seed;
    for (const auto& name : s.checks) rep.checks.push_back(r.run(name));
    return rep;
}

namespace {

std::string decimal17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

std::string emit_report_json(const Report& r) {
    nlohmann::ordered_json j;
    j["format"] = "rolldist-report v1";
    j["scenario"] = r.scenario;
    j["rng-seed"] = r.rng_seed;
    j["verdict"] = r.pass() ? "pass" : "fail";
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["points"] = c.points;
        jc["skipped"] = c.skipped;
        nlohmann::ordered_json sk = nlohmann::ordered_json::object();
        for (const auto& [k, n] : c.skip_reasons) sk[k] = n;
        jc["skips"] = sk;
        jc["max-residual"] = decimal17(c.max_residual);
        jc["max-location"] = c.max_location;
        jc["tolerance"] = decimal17(c.tolerance);
        jc["pass"] = c.pass();
        j["checks"].push_back(jc);
    }
    return j.dump(2) + "\n";
}

std::string emit_report_text(const Report& r) {
    std::ostringstream out;
    out << "scenario: " << r.scenario << "\n";
    for (const auto& c : r.checks) {
        out << (c.pass() ? "PASS" : "FAIL") << "  " << c.name
            << "  max=" << decimal17(c.max_residual) << "  tol=" << fmt_g(c.tolerance)
            << "  points=" << c.points;
        if (c.skipped > 0) {
            out << "  skipped=" << c.skipped << " (";
            bool first = true;
            for (const auto& [k, n] : c.skip_reasons) {
                if (!first) out << ", ";
                out << k << " x" << n;
                first = false;
            }
            out << ")";
        }
        if (!c.max_location.empty()) out << "  at " << c.max_location;
        out << "\n";
    }
    out << "verdict: " << (r.pass() ? "pass" : "fail") << "\n";
    return out.str();
}

int report_exit_code(const Report& r) { return r.pass() ? 0 : 1; }

} // namespace rolldist
