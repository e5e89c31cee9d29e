#pragma once

#include "semtoken/budget.hpp"
#include "semtoken/embedder.hpp"
#include "semtoken/entropy.hpp"
#include "semtoken/errors.hpp"
#include "semtoken/pretokenize.hpp"
#include "semtoken/query.hpp"
#include "semtoken/semf.hpp"
#include "semtoken/sequence_io.hpp"
#include "semtoken/spans.hpp"
#include "semtoken/theory.hpp"
#include "semtoken/types.hpp"
