#pragma once

#include <ropt/core.hpp>
#include <ropt/problems.hpp>
#include <ropt/operators.hpp>
#include <ropt/run_record.hpp>
#include <ropt/hill_climbing.hpp>
#include <ropt/annealing.hpp>
#include <ropt/genetic.hpp>
#include <ropt/mimic.hpp>
#include <ropt/oracle.hpp>
#include <ropt/problem_spec.hpp>
#include <ropt/harness.hpp>
#include <ropt/report.hpp>
