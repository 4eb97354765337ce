#pragma once

#include "sqwords/census.hpp"
#include "sqwords/dot.hpp"
#include "sqwords/rauzy.hpp"
#include "sqwords/squares.hpp"
#include "sqwords/verifier.hpp"
#include "sqwords/word.hpp"
#include "sqwords/words.hpp"
