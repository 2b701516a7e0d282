#pragma once

// Umbrella header for the exact Sigma^1 engine for groups of
// PL-homeomorphisms of an interval, a half line, or the line.

#include "plsigma/ball.hpp"
#include "plsigma/certificate.hpp"
#include "plsigma/character.hpp"
#include "plsigma/classify.hpp"
#include "plsigma/config.hpp"
#include "plsigma/connectivity.hpp"
#include "plsigma/corpus.hpp"
#include "plsigma/germs.hpp"
#include "plsigma/groupspec.hpp"
#include "plsigma/hnf.hpp"
#include "plsigma/logreal.hpp"
#include "plsigma/monoid.hpp"
#include "plsigma/plmap.hpp"
#include "plsigma/rat.hpp"
#include "plsigma/serialize.hpp"
