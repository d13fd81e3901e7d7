// schlice :: umbrella header
#pragma once

#include "schlice/corpus.hpp"
#include "schlice/errors.hpp"
#include "schlice/gadget.hpp"
#include "schlice/herbrand.hpp"
#include "schlice/letter.hpp"
#include "schlice/parse.hpp"
#include "schlice/paths.hpp"
#include "schlice/quotient.hpp"
#include "schlice/reduce.hpp"
#include "schlice/sat.hpp"
#include "schlice/schema.hpp"
#include "schlice/slice.hpp"
#include "schlice/symbols.hpp"
#include "schlice/term.hpp"
