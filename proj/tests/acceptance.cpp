// Acceptance gate: one line per criterion, exit status = number of failures.
#include <chrono>
#include <cstdio>

#include <ordpat/verify.hpp>

#include "suites.hpp"

using namespace ordpat;

namespace {

int failures = 0;

void report(int n, bool ok, const char* what, const std::string& detail) {
    std::printf("criterion %d: %s  %s (%s)\n", n, ok ? "PASS" : "FAIL", what, detail.c_str());
    if (!ok) ++failures;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

int main() {
    // 1: both sides of the order reduction agree on the sample grids
    {
        auto t0 = std::chrono::steady_clock::now();
        Engine e{StructureParams{}};
        std::uint64_t checked = 0, unknown = 0, disagreed = 0;
        for (const char* xi : {"w^0", "w^0*2", "w^w^0"}) {
            VerifyReport r = verify_order_reduction(e, parse(xi), alpha_term(3));
            checked += r.checked;
            unknown += r.unknown;
            disagreed += r.disagreed.size();
        }
        double ms = ms_since(t0);
        bool ok = disagreed == 0 && unknown * 5 <= checked && ms < 60000;
        report(1, ok, "order reduction agreement",
               "checked=" + std::to_string(checked) + " unknown=" + std::to_string(unknown) +
                   " disagreed=" + std::to_string(disagreed));
    }

    // 2: predicted interval lengths match the collapse domain exactly
    {
        auto t0 = std::chrono::steady_clock::now();
        Engine e{StructureParams{}};
        VerifyReport r = verify_second_recurrence(e, 4);
        bool exact = true;
        for (std::uint64_t eta = 0; eta <= 4; ++eta) {
            RecurrencePrediction p = second_recurrence_predict(e, nat_term(eta));
            CollapseContext ctx = make_collapse_context(e, omega_pow(nat_term(eta)));
            if (!p.predicted_dom_max || *p.predicted_dom_max != *ctx.dom_max) exact = false;
        }
        bool ok = exact && r.passed() && r.unknown == 0 && r.oracle_gaps == 0 &&
                  ms_since(t0) < 10000;
        report(2, ok, "second recurrence, eta = 0..4",
               "agreed=" + std::to_string(r.agreed) + "/" + std::to_string(r.checked));
    }

    // 3: every emitted construction passes covering verification
    {
        suites::SuiteResult r = suites::construction_suite();
        report(3, r.cases >= 500 && r.failures == 0, "construction soundness",
               "maps=" + std::to_string(r.cases) + " failures=" + std::to_string(r.failures) +
                   (r.note.empty() ? "" : "; " + r.note));
    }

    // 4: decomposition round trip and closure equivalences, exhaustive
    {
        suites::SuiteResult r = suites::decomposition_suite();
        report(4, r.failures == 0, "decomposition and closure laws",
               "cases=" + std::to_string(r.cases) + " failures=" + std::to_string(r.failures));
    }

    // 5: search agrees with brute-force enumeration
    {
        auto t0 = std::chrono::steady_clock::now();
        suites::SuiteResult r = suites::brute_force_suite();
        report(5, r.failures == 0 && ms_since(t0) < 120000, "brute-force oracle agreement",
               "cases=" + std::to_string(r.cases) + " failures=" + std::to_string(r.failures));
    }

    // 6: term algebra laws on generated cases
    {
        suites::SuiteResult r = suites::term_law_suite();
        report(6, r.cases >= 10000 && r.failures == 0, "term algebra laws",
               "cases=" + std::to_string(r.cases) + " failures=" + std::to_string(r.failures));
    }

    // 7: perturbing the nu spacing axiom must break criteria 1 and 2
    {
        AxiomTable mut;
        mut.nu_unit_offset = 2;
        Engine e{StructureParams{}, mut};
        VerifyReport orr = verify_order_reduction(e, nat_term(1), alpha_term(3));
        VerifyReport rec = verify_second_recurrence(e, 4);
        bool ok = !orr.passed() && !orr.disagreed.empty() && !rec.passed() &&
                  !rec.disagreed.empty();
        report(7, ok, "mutation sensitivity",
               "order-reduction disagreements=" + std::to_string(orr.disagreed.size()) +
                   ", recurrence disagreements=" + std::to_string(rec.disagreed.size()));
    }

    return failures;
}
