#pragma once

#include "heffter/field.hpp"
#include "heffter/halfset.hpp"
#include "heffter/hdm.hpp"
#include "heffter/search.hpp"
#include "heffter/space.hpp"
#include "heffter/cycles.hpp"
#include "heffter/certificate.hpp"
