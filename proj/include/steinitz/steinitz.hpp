#pragma once

#include "steinitz/error.hpp"
#include "steinitz/numtheory.hpp"
#include "steinitz/residue.hpp"
#include "steinitz/group.hpp"
#include "steinitz/group_build.hpp"
#include "steinitz/subgroups.hpp"
#include "steinitz/abelian.hpp"
#include "steinitz/quadform.hpp"
#include "steinitz/field.hpp"
#include "steinitz/efield.hpp"
#include "steinitz/classgroup.hpp"
#include "steinitz/calw.hpp"
#include "steinitz/structure.hpp"
#include "steinitz/certificate.hpp"
