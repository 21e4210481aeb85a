#pragma once

// Umbrella header: antichain-growth classification of regular, context-free
// and regular tree languages over partially ordered alphabets, with
// brute-force width oracles and the information-flow application.

#include "lexwidth/cfg.hpp"
#include "lexwidth/cfg_analyzer.hpp"
#include "lexwidth/errors.hpp"
#include "lexwidth/infoflow.hpp"
#include "lexwidth/nfa.hpp"
#include "lexwidth/nfta.hpp"
#include "lexwidth/poset.hpp"
#include "lexwidth/regular_classifier.hpp"
#include "lexwidth/tree.hpp"
#include "lexwidth/tree_analyzer.hpp"
#include "lexwidth/width_oracle.hpp"
#include "lexwidth/word_order.hpp"
