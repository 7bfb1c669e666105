#ifndef CTXSPELL_CTXSPELL_HPP
#define CTXSPELL_CTXSPELL_HPP

// Context-sensitive spelling correction toolkit: candidate generation from
// a frequency/POS lexicon, independent selection techniques (contextual
// rule filter, document and background frequency, random baseline),
// weighted-vote combination, synthetic error injection, and a
// coverage/precision evaluation harness.

#include "ctxspell/candidates.hpp"
#include "ctxspell/combiner.hpp"
#include "ctxspell/constraints.hpp"
#include "ctxspell/corpus.hpp"
#include "ctxspell/error_synth.hpp"
#include "ctxspell/evaluation.hpp"
#include "ctxspell/guessers.hpp"
#include "ctxspell/lexicon.hpp"
#include "ctxspell/pipeline.hpp"
#include "ctxspell/pos.hpp"
#include "ctxspell/rng.hpp"
#include "ctxspell/run_config.hpp"
#include "ctxspell/text.hpp"

#endif
