// Small tour: representations in base 3/2, the parity-of-digit-sum sequence,
// its morphic descriptions, and a factor census of the decorated tree.

#include <iostream>

#include "ratseq/ratseq.hpp"

int main() {
    using namespace ratseq;

    RationalBase base(3, 2);
    std::cout << "first words of L_{3/2}:";
    for (long long n = 0; n < 8; ++n) std::cout << ' ' << to_text(rep(base, n));
    std::cout << "\nsignature: " << to_text(derive_rational_signature(base)) << "\n";

    Dfao parity = builtin::sum_parity_dfao(3);
    SequenceView view = make_view(parity, base);
    std::cout << "digit-sum parity: " << join(sequence_prefix(view, 34)) << "\n";

    AlternatingSystem sys = dfao_to_alternating(parity, view.sig);
    BlockSubstitution g = to_block_substitution(sys);
    std::cout << "as a " << g.block_len << "-block substitution:\n" << to_text(g);

    Decoration deco = Decoration::automaton(parity);
    for (int h = 1; h <= 3; ++h) {
        FactorCensus cen = census(view.sig, deco, h, 20000);
        std::cout << "#F_" << h << " = " << cen.class_count() << "\n";
    }
    return 0;
}
