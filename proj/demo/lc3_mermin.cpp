// Walks through the three-qubit cluster state: its Mermin-type operator, the
// local-realist maximum, the quantum value, and the same inequality after a Z
// measurement on an extra qubit of a longer chain.

#include <cstdio>

#include "gsbell/bell.hpp"
#include "gsbell/dense.hpp"
#include "gsbell/graph.hpp"
#include "gsbell/lhv.hpp"

int main() {
    using namespace gsbell;

    const Graph lc3 = family(Family::LC, 3);
    const BellInequality b = theorem1_operator(lc3, 1, VertexSet{0, 2});
    std::printf("%s on LC_3\n  expression: %s\n  Pauli form: %s\n", b.label.c_str(), b.expression.str().c_str(),
                b.pauli_form->str().c_str());

    const ClassicalMaximum local = classical_max(b, {.lemma1_graph = &lc3, .workers = 1});
    const double quantum = graph_state_expectation(lc3, *b.pauli_form);
    std::printf("  local maximum %g over %d variables, quantum value %g, violation %g\n", local.value,
                local.enumerated_variables, quantum, quantum / local.value);
    std::printf("  a maximizing assignment:");
    for (const auto& [name, value] : local.argmax) std::printf(" %s=%+d", name.c_str(), value);
    std::printf("\n");

    const SpectrumSummary spec = spectrum(*b.pauli_form);
    std::printf("  largest eigenvalue %g (multiplicity %d), cluster-state weight in that space %g\n", spec.max_eigenvalue,
                spec.multiplicity, top_space_overlap(spec, graph_state_vector(lc3)));

    // On LC_5, measuring Z on qubit 4 leaves the first three qubits in a state
    // that still violates the same inequality maximally.
    const Graph lc5 = family(Family::LC, 5);
    for (int outcome : {+1, -1}) {
        const BellInequality c = condition_on_z(theorem1_operator(lc5, 1, VertexSet{0, 2}), {{3, outcome}});
        const StateVector post = project_z(graph_state_vector(lc5), {{3, outcome}});
        const double q = expectation(post, *c.pauli_form);
        const double l = classical_max(*c.pauli_form).value;
        std::printf("%s on LC_5: local maximum %g, quantum value %g\n", c.label.c_str(), l, q);
    }
    return 0;
}
