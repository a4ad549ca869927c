#pragma once

#include "statcalc/da_table.hpp"
#include "statcalc/derivative.hpp"
#include "statcalc/errors.hpp"
#include "statcalc/expr.hpp"
#include "statcalc/format.hpp"
#include "statcalc/function.hpp"
#include "statcalc/interval.hpp"
#include "statcalc/mean_integral.hpp"
#include "statcalc/report.hpp"
#include "statcalc/sampling.hpp"
#include "statcalc/summation.hpp"
#include "statcalc/tabular.hpp"
