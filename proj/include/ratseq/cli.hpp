#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ratseq/ratseq.hpp"

namespace ratseq {

namespace detail {

struct SystemChoice {
    std::string base_text;
    std::string sig_text;

    LabeledSignature signature() const {
        if (!base_text.empty() && !sig_text.empty())
            throw Error("give either --base or --sig, not both");
        if (!base_text.empty()) return derive_rational_signature(base_from_text(base_text));
        if (!sig_text.empty()) return signature_from_text(sig_text);
        throw Error("a numeration system is required: --base p/q or --sig words");
    }

    std::optional<RationalBase> base() const {
        if (!base_text.empty() && !sig_text.empty())
            throw Error("give either --base or --sig, not both");
        if (base_text.empty()) return std::nullopt;
        return base_from_text(base_text);
    }
};

inline void add_system_options(CLI::App* cmd, SystemChoice& sys, bool base_only = false) {
    cmd->add_option("--base", sys.base_text, "rational base, e.g. 3/2");
    if (!base_only) cmd->add_option("--sig", sys.sig_text, "labeled signature, e.g. 02,1");
}

inline SequenceView view_for(const Dfao& d, const SystemChoice& sys, bool lsd) {
    Reading r = lsd ? Reading::lsd_first : Reading::msd_first;
    auto base = sys.base();
    if (base) return make_view(d, *base, r);
    return make_view(d, sys.signature(), r);
}

inline std::string render_terms(const std::vector<std::string>& terms) {
    bool compact = true;
    for (const auto& t : terms)
        if (t.size() != 1) compact = false;
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (!compact && i > 0) s += ' ';
        s += terms[i];
    }
    return s;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace detail

/// Command line front end. Returns 0 on success, 1 on a domain error and 2
/// on a usage error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"automatic sequences over rational-base and periodic-signature numeration systems"};
    app.require_subcommand(1);

    // rep
    auto* rep_cmd = app.add_subcommand("rep", "canonical representation of an integer");
    std::string rep_base;
    long long rep_n = 0;
    rep_cmd->add_option("--base", rep_base, "rational base p/q")->required();
    rep_cmd->add_option("n", rep_n, "non-negative integer")->required();

    // val
    auto* val_cmd = app.add_subcommand("val", "exact value of a digit word");
    std::string val_base, val_word;
    val_cmd->add_option("--base", val_base, "rational base p/q")->required();
    val_cmd->add_option("word", val_word, "digit word (\"e\" for the empty word)")->required();

    // sig derive|enumerate|dot
    auto* sig_cmd = app.add_subcommand("sig", "signature and i-tree operations");
    sig_cmd->require_subcommand(1);
    auto* sig_derive = sig_cmd->add_subcommand("derive", "signature of a rational base");
    std::string sig_derive_base;
    sig_derive->add_option("--base", sig_derive_base, "rational base p/q")->required();
    auto* sig_enum = sig_cmd->add_subcommand("enumerate", "first words of the language in radix order");
    detail::SystemChoice sig_enum_sys;
    long long sig_enum_count = 10;
    detail::add_system_options(sig_enum, sig_enum_sys);
    sig_enum->add_option("--count", sig_enum_count, "number of words")->required();
    auto* sig_dot = sig_cmd->add_subcommand("dot", "DOT rendering of the first levels of the i-tree");
    detail::SystemChoice sig_dot_sys;
    int sig_dot_levels = 4;
    detail::add_system_options(sig_dot, sig_dot_sys);
    sig_dot->add_option("--levels", sig_dot_levels, "levels to render");

    // seq
    auto* seq_cmd = app.add_subcommand("seq", "prefix of the sequence generated by a DFAO");
    std::string seq_dfao;
    detail::SystemChoice seq_sys;
    long long seq_count = 0;
    bool seq_lsd = false;
    seq_cmd->add_option("--dfao", seq_dfao, "automaton file (JSON)")->required();
    detail::add_system_options(seq_cmd, seq_sys);
    seq_cmd->add_option("--count", seq_count, "number of terms")->required();
    seq_cmd->add_flag("--lsd", seq_lsd, "read representations least significant digit first");

    // morph fixpoint|to-block|bridge
    auto* morph_cmd = app.add_subcommand("morph", "morphic systems and block substitutions");
    morph_cmd->require_subcommand(1);
    auto* morph_fix = morph_cmd->add_subcommand("fixpoint", "prefix of a fixed point");
    std::string morph_fix_rules, morph_fix_seed;
    long long morph_fix_count = 0;
    bool morph_fix_block = false;
    morph_fix->add_option("--rules", morph_fix_rules, "rules file")->required();
    morph_fix->add_option("--seed", morph_fix_seed, "seed letter (alternating) or seed word (block)")->required();
    morph_fix->add_option("--count", morph_fix_count, "number of letters")->required();
    morph_fix->add_flag("--block", morph_fix_block, "rules are a block substitution");
    auto* morph_toblock = morph_cmd->add_subcommand("to-block", "block substitution of an alternating system");
    std::string morph_toblock_rules;
    morph_toblock->add_option("--rules", morph_toblock_rules, "alternating rules file")->required();
    auto* morph_bridge = morph_cmd->add_subcommand("bridge", "round trip DFAO -> morphisms -> DFAO");
    std::string morph_bridge_dfao;
    detail::SystemChoice morph_bridge_sys;
    long long morph_bridge_count = 1000;
    morph_bridge->add_option("--dfao", morph_bridge_dfao, "automaton file (JSON)")->required();
    detail::add_system_options(morph_bridge, morph_bridge_sys);
    morph_bridge->add_option("--count", morph_bridge_count, "terms to compare");

    // factors census|check-lemma|nfa|determinize|probe
    auto* factors_cmd = app.add_subcommand("factors", "decorated subtree analysis");
    factors_cmd->require_subcommand(1);
    auto* f_census = factors_cmd->add_subcommand("census", "census of height-h factors");
    std::string f_census_dfao;
    detail::SystemChoice f_census_sys;
    int f_census_height = 1;
    long long f_census_window = 100000;
    int f_census_threshold = -1;
    f_census->add_option("--dfao", f_census_dfao, "decorating automaton (JSON)")->required();
    detail::add_system_options(f_census, f_census_sys);
    f_census->add_option("--height", f_census_height, "factor height")->required();
    f_census->add_option("--window", f_census_window, "number of root nodes scanned");
    f_census->add_option("--threshold", f_census_threshold,
                         "level from which classes count as infinite (default: half the window depth)");
    auto* f_lemma = factors_cmd->add_subcommand("check-lemma", "congruence/domain checks for a rational base");
    std::string f_lemma_base;
    int f_lemma_height = 2;
    long long f_lemma_samples = 1000;
    unsigned long long f_lemma_seed = 7;
    f_lemma->add_option("--base", f_lemma_base, "rational base p/q")->required();
    f_lemma->add_option("--height", f_lemma_height, "height h");
    f_lemma->add_option("--samples", f_lemma_samples, "sampled pairs");
    f_lemma->add_option("--seed", f_lemma_seed, "sampling seed");
    auto* f_nfa = factors_cmd->add_subcommand("nfa", "factor NFA from census data");
    std::string f_nfa_dfao, f_nfa_format = "json";
    detail::SystemChoice f_nfa_sys;
    int f_nfa_height = 1, f_nfa_t = 1, f_nfa_threshold = -1;
    long long f_nfa_window = 100000;
    f_nfa->add_option("--dfao", f_nfa_dfao, "decorating automaton (JSON)")->required();
    detail::add_system_options(f_nfa, f_nfa_sys);
    f_nfa->add_option("--height", f_nfa_height, "factor height h");
    f_nfa->add_option("--t", f_nfa_t, "prefix threshold level t");
    f_nfa->add_option("--window", f_nfa_window, "census window");
    f_nfa->add_option("--threshold", f_nfa_threshold, "infinite-class threshold level (default t)");
    f_nfa->add_option("--format", f_nfa_format, "output format: json|dot");
    auto* f_det = factors_cmd->add_subcommand("determinize", "subset construction on a factor NFA");
    std::string f_det_nfa, f_det_format = "json";
    f_det->add_option("--nfa", f_det_nfa, "NFA file (JSON)")->required();
    f_det->add_option("--format", f_det_format, "output format: json|dot");
    auto* f_probe = factors_cmd->add_subcommand("probe", "rationality probe over growing heights");
    std::string f_probe_dfao;
    detail::SystemChoice f_probe_sys;
    int f_probe_max_height = 4;
    long long f_probe_window = 100000;
    f_probe->add_option("--dfao", f_probe_dfao, "decorating automaton (JSON)")->required();
    detail::add_system_options(f_probe, f_probe_sys);
    f_probe->add_option("--max-height", f_probe_max_height, "largest height scanned");
    f_probe->add_option("--window", f_probe_window, "census window");

    // convert
    auto* conv_cmd = app.add_subcommand("convert", "affine digit conversion on canonical words");
    std::string conv_base, conv_word;
    long long conv_mul = 1, conv_add = 0;
    conv_cmd->add_option("--base", conv_base, "rational base p/q")->required();
    conv_cmd->add_option("--mul", conv_mul, "multiply by a constant");
    conv_cmd->add_option("--add", conv_add, "add a constant");
    conv_cmd->add_option("word", conv_word, "canonical digit word")->required();

    std::vector<const char*> argv;
    argv.push_back("ratseq");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (*rep_cmd) {
            out << to_text(rep(base_from_text(rep_base), rep_n)) << "\n";
        } else if (*val_cmd) {
            RationalBase base = base_from_text(val_base);
            out << rational_to_string(val(base, word_from_text(val_word))) << "\n";
        } else if (*sig_derive) {
            out << to_text(derive_rational_signature(base_from_text(sig_derive_base))) << "\n";
        } else if (*sig_enum) {
            for (const auto& w : enumerate_words(sig_enum_sys.signature(), sig_enum_count))
                out << to_text(w) << "\n";
        } else if (*sig_dot) {
            out << itree_dot(sig_dot_sys.signature(), sig_dot_levels);
        } else if (*seq_cmd) {
            SequenceView view = detail::view_for(load_dfao(seq_dfao), seq_sys, seq_lsd);
            out << detail::render_terms(sequence_prefix(view, seq_count)) << "\n";
        } else if (*morph_fix) {
            std::vector<int> word;
            if (morph_fix_block) {
                BlockSubstitution g = block_from_text(detail::read_file(morph_fix_rules));
                word = block_fixed_prefix(g, word_from_text(morph_fix_seed).digits(), morph_fix_count);
            } else {
                DigitWord seed = word_from_text(morph_fix_seed);
                if (seed.size() != 1) throw Error("alternating fixpoint: seed must be a single letter");
                AlternatingSystem sys =
                    alternating_from_text(detail::read_file(morph_fix_rules), seed[0]);
                word = alternating_prefix(sys, morph_fix_count);
            }
            out << to_text(DigitWord(word)) << "\n";
        } else if (*morph_toblock) {
            AlternatingSystem sys = alternating_from_text(detail::read_file(morph_toblock_rules), 0);
            out << to_text(to_block_substitution(sys));
        } else if (*morph_bridge) {
            Dfao d = load_dfao(morph_bridge_dfao);
            LabeledSignature sig = morph_bridge_sys.signature();
            if (!cobham_roundtrip_check(d, sig, morph_bridge_count))
                throw Error("round trip disagrees within the first " +
                            std::to_string(morph_bridge_count) + " terms");
            out << "roundtrip ok (" << morph_bridge_count << " terms)\n";
        } else if (*f_census) {
            LabeledSignature sig = f_census_sys.signature();
            Decoration deco = Decoration::automaton(load_dfao(f_census_dfao));
            FactorCensus cen = census(sig, deco, f_census_height, f_census_window);
            int threshold = f_census_threshold >= 0 ? f_census_threshold
                                                    : std::max(1, cen.deepest_complete_level / 2);
            InfiniteEstimate est = infinite_factor_estimate(cen, threshold);
            out << "h\t#F_h\t#F_h^inf(t=" << threshold << ")\n";
            out << cen.height << "\t" << cen.class_count() << "\t" << est.infinite_classes.size()
                << "\n";
            out << est.describe(cen) << "\n";
            out << "distinct undecorated domains: " << cen.distinct_domains
                << "; deepest complete level: " << cen.deepest_complete_level << "\n";
            out << "class\tcount\tfirst_root\tlevels\n";
            for (std::size_t i = 0; i < cen.classes.size(); ++i) {
                const auto& cls = cen.classes[i];
                out << i << "\t" << cls.count << "\t" << cls.first_root << "\t" << cls.min_level
                    << "-" << cls.max_level << "\n";
            }
        } else if (*f_lemma) {
            CongruenceReport report = congruence_domain_check(base_from_text(f_lemma_base),
                                                              f_lemma_height, f_lemma_samples,
                                                              f_lemma_seed);
            out << report.summary() << "\n";
            for (const auto& v : report.violations) out << "violation: " << v << "\n";
        } else if (*f_nfa) {
            LabeledSignature sig = f_nfa_sys.signature();
            Decoration deco = Decoration::automaton(load_dfao(f_nfa_dfao));
            int threshold = f_nfa_threshold >= 0 ? f_nfa_threshold : f_nfa_t;
            FactorCensus fh = census(sig, deco, f_nfa_height, f_nfa_window);
            FactorCensus fh1 = census(sig, deco, f_nfa_height + 1, f_nfa_window);
            InfiniteEstimate eh = infinite_factor_estimate(fh, threshold);
            InfiniteEstimate eh1 = infinite_factor_estimate(fh1, threshold);
            FactorNfa nfa = build_factor_nfa(
                nfa_input_from_censuses(sig, deco, f_nfa_t, f_nfa_height, fh, eh, fh1, eh1));
            if (f_nfa_format == "dot")
                out << nfa_dot(nfa);
            else if (f_nfa_format == "json")
                out << nfa_to_json(nfa).dump(2) << "\n";
            else
                throw Error("unknown format '" + f_nfa_format + "' (expected json or dot)");
        } else if (*f_det) {
            Dfao d = determinize(load_nfa(f_det_nfa));
            if (f_det_format == "dot")
                out << dfao_dot(d);
            else if (f_det_format == "json")
                out << dfao_to_json(d).dump(2) << "\n";
            else
                throw Error("unknown format '" + f_det_format + "' (expected json or dot)");
        } else if (*f_probe) {
            LabeledSignature sig = f_probe_sys.signature();
            Decoration deco = Decoration::automaton(load_dfao(f_probe_dfao));
            std::vector<long long> counts;
            for (int h = 1; h <= f_probe_max_height; ++h) {
                counts.push_back(census(sig, deco, h, f_probe_window).class_count());
                out << "#F_" << h << " = " << counts.back() << "\n";
            }
            out << rationality_probe(counts).describe() << "\n";
        } else if (*conv_cmd) {
            RationalBase base = base_from_text(conv_base);
            DigitWord w = word_from_text(conv_word, base.alphabet_size());
            out << to_text(add_constant(base, multiply_constant(base, w, conv_mul), conv_add))
                << "\n";
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace ratseq
