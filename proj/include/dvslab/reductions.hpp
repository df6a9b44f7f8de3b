#pragma once

#include "dvslab/adversaries.hpp"
#include "dvslab/schemes.hpp"

namespace dvslab {

enum class ReductionKind {
    nf2nr,
    nf2adv,
    uf_strip,
    forgery_extract,
    embed_n_to_2,
    nt_from_hybrid,
};

std::string_view reduction_name(ReductionKind kind);
std::optional<ReductionKind> parse_reduction(std::string_view name);

// Fixed-pair adversary built from a random-challenge one: a hidden
// permutation with pi(n) = n relabels parties and oracles for the inner
// adversary; the final guess is pi(c') clamped to {0,1}.
std::unique_ptr<TwoPhaseAdversary> wrap_nf2nr(
    std::unique_ptr<TwoPhaseAdversary> inner, int n);

// Fixed-pair adversary built from an adversarial-challenge one: an
// unrestricted hidden permutation; when the permuted challenge choice lands
// exactly on (0, 1, n) the inner guess is used (flipped if reversed),
// otherwise the output is a coin.
std::unique_ptr<TwoPhaseAdversary> wrap_nf2adv(
    std::unique_ptr<TwoPhaseAdversary> inner, int n);

// Interposes on the inner adversary's verify queries: answers true exactly
// when (m, sigma) was previously returned by a sign or sim query, and never
// touches a real verify oracle, so the wrapped adversary is legal against
// verify-stripped oracle sets.
std::unique_ptr<TwoPhaseAdversary> strip_verify_adversary(
    std::unique_ptr<TwoPhaseAdversary> inner);

// Unforgeability adversary that runs a sender-privacy adversary inside a
// simulated psi game, forwarding its verify queries to the real verify
// oracle; the first valid-but-never-issued query is output as the forgery.
std::unique_ptr<UfAdversary> forgery_extractor(
    std::unique_ptr<TwoPhaseAdversary> inner, int n);

// 2-party adversary presenting an n-party view to the inner adversary:
// parties 2..n-1 are simulated with locally generated keypairs and oracle
// calls pairing an outer party with an internal one are answered by the
// swapped algorithm.
std::unique_ptr<TwoPhaseAdversary> embed_n_to_2(
    std::unique_ptr<TwoPhaseAdversary> inner, int n,
    std::shared_ptr<const Scheme> scheme);

// Non-transferability adversary measuring the gap between hybrid games k and
// k+1: it replays the hybrid game from a private seed with the NT keypairs
// planted as the parties of the (k+1)-th crossover call and uses the NT
// challenge as that call's answer. Runs with fewer than k+1 crossover calls
// (or a key-dependent schedule drift) fall back to a coin.
std::unique_ptr<TwoPhaseAdversary> nt_from_hybrid(
    TwoPhaseFactory inner_factory, int n, std::size_t k,
    std::shared_ptr<const Scheme> scheme);

}  // namespace dvslab
