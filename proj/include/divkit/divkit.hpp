#pragma once

#include "divkit/bayes.hpp"
#include "divkit/distribution.hpp"
#include "divkit/divergence.hpp"
#include "divkit/errors.hpp"
#include "divkit/extended.hpp"
#include "divkit/generator.hpp"
#include "divkit/report.hpp"
#include "divkit/skewing.hpp"
