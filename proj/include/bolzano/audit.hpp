#pragma once

// Optional global audit hooks: every certificate and measuring fraction the
// library emits can be recorded and later re-checked by exact sampling.

#include "bolzano/sequence.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bolzano::audit {

using CertificateSink = std::function<void(const CertifiedSequence&)>;
// (sequence, q, p, from_index)
using FractionSink =
    std::function<void(const CertifiedSequence&, const Integer&, const Integer&, Index)>;

void set_certificate_sink(CertificateSink sink);
void set_fraction_sink(FractionSink sink);
void clear_sinks();

void emit_certificate(const CertifiedSequence& cs);
void emit_fraction(const CertifiedSequence& cs, const Integer& q, const Integer& p, Index from);

// Exact sampling checks. A return value describes the first violated
// inequality; nullopt means every sampled check held exactly.
std::optional<std::string> check_certificate(const CertifiedSequence& cs,
                                             const std::vector<Integer>& qs);
std::optional<std::string> check_fraction(const CertifiedSequence& cs, const Integer& q,
                                          const Integer& p, Index from);

}  // namespace bolzano::audit
