#pragma once

#include "qmono/acceptance.hpp"
#include "qmono/cli.hpp"
#include "qmono/config.hpp"
#include "qmono/errors.hpp"
#include "qmono/fraction.hpp"
#include "qmono/identities.hpp"
#include "qmono/macdonald.hpp"
#include "qmono/parallel.hpp"
#include "qmono/partitions.hpp"
#include "qmono/polynomial.hpp"
#include "qmono/positivity.hpp"
#include "qmono/rational.hpp"
#include "qmono/serialize.hpp"
#include "qmono/series.hpp"
#include "qmono/specialization.hpp"
