#pragma once

#include "ratseq/automata_io.hpp"
#include "ratseq/builtin_automata.hpp"
#include "ratseq/dfao.hpp"
#include "ratseq/digit_word.hpp"
#include "ratseq/digitconv.hpp"
#include "ratseq/factor_nfa.hpp"
#include "ratseq/factors.hpp"
#include "ratseq/morphic.hpp"
#include "ratseq/numeration.hpp"
#include "ratseq/rational_base.hpp"
#include "ratseq/signature.hpp"
