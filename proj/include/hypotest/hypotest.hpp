#ifndef HYPOTEST_HYPOTEST_HPP
#define HYPOTEST_HYPOTEST_HPP

#include "hypotest/bounds.hpp"
#include "hypotest/distributions.hpp"
#include "hypotest/errors.hpp"
#include "hypotest/experiments.hpp"
#include "hypotest/numerics.hpp"
#include "hypotest/oracle.hpp"

#endif  // HYPOTEST_HYPOTEST_HPP
