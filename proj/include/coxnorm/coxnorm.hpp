#pragma once

#include "coxnorm/coxeter_group.hpp"
#include "coxnorm/coxeter_matrix.hpp"
#include "coxnorm/errors.hpp"
#include "coxnorm/geometric_rep.hpp"
#include "coxnorm/group_element.hpp"
#include "coxnorm/group_function.hpp"
#include "coxnorm/linalg.hpp"
#include "coxnorm/operator_est.hpp"
#include "coxnorm/semigroup.hpp"
