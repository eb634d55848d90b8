// Worked examples and the comparison harness that ties the pieces together:
// enumerate a language slice three ways (search oracle, compiled machine,
// hand-built machine) and report any disagreement.

#pragma once

#include <functional>
#include <optional>
#include <variant>

#include "rewb/construct.hpp"
#include "rewb/refnfa.hpp"

namespace rewb {

using Example = std::variant<AstPtr, StackMachine>;

// "ww", "square", "cubic" are expressions; "anbn_nesa" is a machine.
Example example(const std::string& name);
std::vector<std::string> example_names();

// All words over the alphabet up to max_len, shortest first, lexicographic
// within a length.
std::vector<Word> enumerate_words(const Alphabet& a, size_t max_len);

struct SliceReport {
    size_t max_len = 0;
    std::vector<Word> members;
    size_t strings_checked = 0;
    size_t budget_hits = 0;  // machine searches stopped by a cap rather than
                             // by exhausting the reachable space
};

SliceReport language_slice(const Ast& a, const Alphabet& alphabet, size_t max_len);
SliceReport language_slice(const StackMachine& m, const Alphabet& alphabet, size_t max_len,
                           const Budget& budget);

struct BudgetPolicy {
    // negative searches get the largest positive budget scaled by this
    double negative_factor = 4.0;
    // used when the slice has no positive to derive a budget from
    Budget fallback{20'000, 256};
    // invoked after every machine run, e.g. to audit traces
    std::function<void(const StackMachine&, const Word&, const RunResult&)> observer;
};

struct MachineAgreement {
    SliceReport slice;
    std::vector<Word> mismatches;  // symmetric difference against the oracle
};

struct CrosscheckReport {
    SliceReport oracle;
    MachineAgreement nsa;
    std::optional<MachineAgreement> nesa;  // when capture-free

    bool ok() const {
        return nsa.mismatches.empty() && (!nesa || nesa->mismatches.empty());
    }
};

// Oracle slice vs the compiled machines.  Positive runs get budgets derived
// from the oracle witness, negative runs the policy's scaled budget.
CrosscheckReport crosscheck(const Ast& a, const Alphabet& alphabet, size_t max_len,
                            const BudgetPolicy& policy = {});

// Same comparison against one externally supplied machine.
MachineAgreement check_machine_against_oracle(const Ast& a, const StackMachine& m,
                                              const Alphabet& alphabet, size_t max_len,
                                              const BudgetPolicy& policy = {});

// The ref-word spelling n rounds of the cubic example, over Alphabet({"a"}),
// and the closed form n(n+7)(2n+1)/6 its dereference must have.
RefWord cubic_refword(int n);
size_t cubic_length(int n);

}  // namespace rewb
