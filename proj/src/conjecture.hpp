// The executable form of the main conjecture: membership of S (x) X in the
// tilting ideal, S-projectivity tests, module generators and fuzz batteries.

#pragma once

#include <map>
#include <optional>
#include <string>

#include "homological.hpp"
#include "sl2.hpp"

namespace tilt {

enum class VerdictStatus { IN_IDEAL, COUNTEREXAMPLE_CANDIDATE };

struct Verdict {
    std::string input_id;
    std::map<int, int> tilt_multiset; // tilting index -> multiplicity in S (x) X
    int projective_rank = 0;          // free summands stripped from S (x) X
    std::optional<Module> remainder;  // non-empty only for candidates
    VerdictStatus status = VerdictStatus::IN_IDEAL;
};

// Strip and peel S (x) X against the tilting library.  IN_IDEAL requires an
// empty remainder and all peeled indices >= p^(r-1) - 1 (membership in the
// ideal generated by S, not just the tilting category).  The reassembly
// (+) T_i^(mult) (+) kE^(rank) (+) remainder = S (x) X is verified on every
// call when `check_reassembly` is set.
Verdict check_membership(const Module& X, const TiltingTable& table,
                         const std::string& input_id = "", bool check_reassembly = false);

// M is S-projective iff M is a direct summand of M (x) S (x) S*; tested by
// Krull-Schmidt multiplicity matching on the decompositions.
bool is_s_projective(const Module& M, const TiltingTable& table);

// kE^a / (b uniformly random elements of rad kE^a), with free summands
// stripped.  Deterministic in the seed.
Module random_module(std::uint64_t seed, int a, int b, const TiltingTable& table);

// Loewy-length-two module: N_i = [[0,0],[A_i,0]] for random b x a blocks.
Module loewy2_module(std::uint64_t seed, int a, int b, FqPtr F, int r);

// Extension of U_d by U_e classified by a seeded random map f, where U_c is
// the c-dimensional quotient of the uniserial U = St_1^(r-1).
Module uniserial_ext_module(std::uint64_t seed, int d, int e, const TiltingTable& table);

// A random cyclic module kE / (b random radical elements).
Module random_cyclic_module(std::uint64_t seed, int b, const TiltingTable& table);

struct CarlsonReport {
    int total = 0;
    bool all_allowed = true;           // every outcome on the allowed list
    std::vector<int> allowed;          // tilting indices; -1 = projective,
                                       // -2 = S (+) Omega(S) (degree 2 only)
    std::map<int, int> histogram;      // allowed index -> occurrences
    std::vector<std::string> violations;
};

// strip(S (x) L_zeta) for every projective class of H^1 (degree 1) or for
// `budget` sampled classes of H^2 (degree 2), classified against the allowed
// outcome list {0, S, T_(p^r-p^(r-1)+p^i-1), and for p > 2 also
// T_(p^r-2p^(r-1)-1), T_(p^r-p^(r-1)-1)}.  In degree 2 a class acting stably
// by zero on S yields the composite S (+) Omega(S), allowed under key -2.
CarlsonReport carlson_battery(const TiltingTable& table, int degree, int budget,
                              std::uint64_t seed = 0);

struct CyclicScanReport {
    int total = 0;
    int s_projective = 0;
    int violations = 0; // S-projective cyclic modules not of the form T_(lp-1)
};

// Random cyclic modules; every S-projective one must be T_(lp-1), 1 <= l <= p.
CyclicScanReport cyclic_scan(std::uint64_t seed, int count, const TiltingTable& table);

struct FuzzReport {
    std::uint64_t seed = 0;
    int count = 0;
    std::string family;
    int in_ideal = 0;
    int candidates = 0;
    std::vector<std::string> candidate_paths;
};

// family in {"random", "loewy2", "uniserial", "tensor-closure"}.  A verdict
// with a remainder is re-verified (fresh seed, then a x2 field extension)
// before being treated as a candidate; candidates are serialized under
// sink_dir when it is non-empty.  Iterations are pure given their derived
// per-iteration seed and run on `jobs` threads; the report does not depend
// on the thread count.
FuzzReport fuzz(std::uint64_t seed, int count, const std::string& family, int max_dim,
                const TiltingTable& table, const std::string& sink_dir = "", int jobs = 1);

} // namespace tilt
