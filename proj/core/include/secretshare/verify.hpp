#ifndef SECRETSHARE_VERIFY_HPP
#define SECRETSHARE_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "secretshare/access_structure.hpp"
#include "secretshare/binning.hpp"
#include "secretshare/pushforward.hpp"
#include "secretshare/source_model.hpp"

namespace secretshare {

enum class Scheme { AppABinning, NestedReconciliationPA, ThresholdRamp };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

/// Everything needed to execute one protocol end to end.
struct ProtocolSpec {
    Scheme scheme = Scheme::ThresholdRamp;

    // threshold-ramp
    int L = 0;
    int D = 1;
    int t = 0;
    int z = 0;
    int field_degree = 0;
    int blocks = 1;

    // source-based schemes
    std::optional<JointSource> source;
    std::optional<AccessStructure> access;
    ProtocolParams params;
    std::vector<DealerRates> rates;           // appA binning
    std::vector<std::uint64_t> hash_bits;     // nested PA; empty = use the budget

    std::uint64_t seed = 0;

    void validate() const;
};

struct GroupStat {
    SubsetMask group = 0;
    double value = 0.0;
    double ci_upper = 0.0;  // Monte-Carlo only
};

struct VerificationReport {
    std::string scheme;
    std::string method;  // exhaustive-enumeration | per-dealer-composition | monte-carlo-wilson-95
    bool exact = false;

    std::vector<GroupStat> error_by_group;    // one entry per authorized set
    double max_error = 0.0;

    bool leakage_available = false;  // leakage is only ever reported exactly
    bool leakage_vacuous = false;    // unauthorized family empty
    std::vector<GroupStat> leakage_by_group;  // bits, one entry per unauthorized set
    double max_leakage_bits = 0.0;

    double uniformity_deficit_bits = 0.0;
    std::vector<double> rate_per_dealer;
    std::uint64_t trials = 0;
    std::string notes;
};

/// Exact verification of Definition-2 quantities by pushforward enumeration.
VerificationReport verify_protocol(const ProtocolSpec& spec);

/// Monte-Carlo reliability with Wilson 95% intervals. Leakage is never
/// estimated from samples; exact mode is the only leakage source.
VerificationReport simulate(const ProtocolSpec& spec, std::uint64_t trials, std::uint64_t seed);

/// Wilson score interval upper bound at 95% for k successes in n trials.
double wilson_upper_95(std::uint64_t k, std::uint64_t n);

}  // namespace secretshare

#endif
