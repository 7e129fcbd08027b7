#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace nilnike {

// Parameters for the invariant suite run by `nilnike verify`. The quaternion
// p/alpha/kmax knobs are the interesting ones; the rest default to small
// instances.
struct VerifyConfig {
    mpz_class quat_p = 5;
    unsigned quat_alpha = 1;
    unsigned quat_kmax = 2;
    mpz_class heis_p = 5;
    unsigned heis_m = 1;
    mpz_class cyc_p = 3;
    unsigned cyc_alpha = 2;
    unsigned trials = 64;
    std::uint64_t seed = 1;
    bool corrupt_quaternion_sign_table = false;  // negative-control fixture
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<CheckResult> run_verify(const VerifyConfig& config);

} // namespace nilnike
