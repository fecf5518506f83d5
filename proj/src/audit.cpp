#include "bolzano/audit.hpp"

#include <mutex>
#include <set>
#include <sstream>

namespace bolzano::audit {

namespace {

std::mutex g_mutex;
CertificateSink g_cert_sink;
FractionSink g_fraction_sink;

// a handful of indices at and past the claimed modulus; kept close because
// partial results of product expressions grow superexponentially in size
std::vector<Index> sample_indices(Index n) {
    std::vector<Index> out{n, n + 1, n + 3, n + 17};
    out.push_back(n + std::min<Index>(n, 64));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

void set_certificate_sink(CertificateSink sink) {
    std::lock_guard<std::mutex> lock(g_mutex);
    g_cert_sink = std::move(sink);
}

void set_fraction_sink(FractionSink sink) {
    std::lock_guard<std::mutex> lock(g_mutex);
    g_fraction_sink = std::move(sink);
}

void clear_sinks() {
    std::lock_guard<std::mutex> lock(g_mutex);
    g_cert_sink = nullptr;
    g_fraction_sink = nullptr;
}

void emit_certificate(const CertifiedSequence& cs) {
    CertificateSink sink;
    {
        std::lock_guard<std::mutex> lock(g_mutex);
        sink = g_cert_sink;
    }
    if (sink) sink(cs);
}

void emit_fraction(const CertifiedSequence& cs, const Integer& q, const Integer& p, Index from) {
    FractionSink sink;
    {
        std::lock_guard<std::mutex> lock(g_mutex);
        sink = g_fraction_sink;
    }
    if (sink) sink(cs, q, p, from);
}

std::optional<std::string> check_certificate(const CertifiedSequence& cs,
                                             const std::vector<Integer>& qs) {
    const Certificate& c = cs.cert();
    try {
        switch (c.kind) {
            case CertKind::Uncertified:
                return std::nullopt;
            case CertKind::Cauchy:
            case CertKind::Vanishes: {
                for (const Integer& q : qs) {
                    Rational tol(Integer(1), q);
                    Index n0 = cs.cauchy_index(q);
                    auto samples = sample_indices(n0);
                    for (std::size_t i = 0; i < samples.size(); ++i) {
                        for (std::size_t j = i; j < samples.size(); ++j) {
                            Rational d = (cs.at(samples[i]) - cs.at(samples[j])).abs();
                            if (d > tol) {
                                std::ostringstream os;
                                os << cs.label() << ": |S_" << samples[i] << " - S_" << samples[j]
                                   << "| = " << d << " > 1/" << q;
                                return os.str();
                            }
                        }
                    }
                    if (c.kind == CertKind::Vanishes) {
                        Index nv = cs.vanish_index(q);
                        for (Index n : sample_indices(nv)) {
                            Rational v = cs.at(n).abs();
                            if (v > tol) {
                                std::ostringstream os;
                                os << cs.label() << ": |S_" << n << "| = " << v << " > 1/" << q;
                                return os.str();
                            }
                        }
                    }
                }
                return std::nullopt;
            }
            case CertKind::DivergesAbove:
            case CertKind::DivergesBelow: {
                for (const Integer& q : qs) {
                    Rational bound{q};
                    Index n0 = cs.diverge_index(bound);
                    for (Index n : sample_indices(n0)) {
                        Rational v = cs.at(n);
                        bool ok = c.kind == CertKind::DivergesAbove ? v >= bound : v <= -bound;
                        if (!ok) {
                            std::ostringstream os;
                            os << cs.label() << ": S_" << n << " = " << v
                               << " fails the divergence bound " << bound;
                            return os.str();
                        }
                    }
                }
                return std::nullopt;
            }
        }
    } catch (const std::exception& ex) {
        return std::string("audit evaluation failed: ") + ex.what();
    }
    return std::nullopt;
}

std::optional<std::string> check_fraction(const CertifiedSequence& cs, const Integer& q,
                                          const Integer& p, Index from) {
    try {
        Rational lo(p - 1, q);
        Rational hi(p + 1, q);
        for (Index n : sample_indices(from)) {
            Rational v = cs.at(n);
            if (v < lo || v > hi) {
                std::ostringstream os;
                os << cs.label() << ": S_" << n << " = " << v << " outside bracket [" << lo << ", "
                   << hi << "] for q = " << q;
                return os.str();
            }
        }
    } catch (const std::exception& ex) {
        return std::string("audit evaluation failed: ") + ex.what();
    }
    return std::nullopt;
}

}  // namespace bolzano::audit
