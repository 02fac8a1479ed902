#ifndef DEPLOY_TESTS_FIXTURES_H
#define DEPLOY_TESTS_FIXTURES_H

#include <string>

#include "deploy/parser.h"

namespace deploy::testing {

// The three-component blog stack: wordpress needs an http server while
// installed and additionally a live database while running; apache2 serves
// http while installed; mysql offers its socket while installed and the
// up-and-serving port only while running.
inline const char* kWordpressProblem = R"((define (problem p)
 (:domain deployment)
 (:objects
  wordpress mysql apache2 - component
  httpd mysql-in mysql-up - port
 )
 (:init
  (installed-require wordpress httpd)
  (running-require wordpress httpd)
  (running-require wordpress mysql-up)
  (installed-provide apache2 httpd)
  (installed-provide mysql mysql-in)
  (running-provide mysql mysql-up)
  (= (instance-number) 0)
 )
 (:htn
  :tasks (run wordpress)
  :ordering ()
  :constraints ()
 )
)
)";

// The reference 10-step deployment run for the problem above.
inline const char* kWordpressPlan = R"(1.  (createInstance w0)
2.  (createInstance a1)
3.  (start a1)
4.  (bind httpd w0 a1)
5.  (start w0)
6.  (createInstance m2)
7.  (start m2)
8.  (run m2)
9.  (bind mysql-up w0 m2)
10. (run w0)
)";

// A variant whose second create names wordpress instead of apache2: the
// instance started at step 3 is then a wordpress with an unsatisfied
// requirement, so strict replay fails there.
inline const char* kWordpressPlanMislabeledCreate = R"(1.  (createInstance w0)
2.  (createInstance w1)
3.  (start a1)
4.  (bind httpd w0 a1)
5.  (start w0)
6.  (createInstance m2)
7.  (start m2)
8.  (run m2)
9.  (bind mysql-up w0 m2)
10. (run w0)
)";

// Steps 3 and 4 swapped: binding before the provider is started.
inline const char* kWordpressPlanBindBeforeStart = R"(1.  (createInstance w0)
2.  (createInstance a1)
3.  (bind httpd w0 a1)
4.  (start a1)
5.  (start w0)
6.  (createInstance m2)
7.  (start m2)
8.  (run m2)
9.  (bind mysql-up w0 m2)
10. (run w0)
)";

inline Problem wordpressProblem() { return parseProblem(kWordpressProblem); }

// Two components that each need, while running, a port the other offers only
// while installed. Running both pins each provider in the installed state,
// so a second instance of each component is needed.
inline Problem mutualCycleProblem() {
    return parseProblem(R"((define (problem cycle)
 (:domain deployment)
 (:objects
  alpha beta - component
  pa pb - port
 )
 (:init
  (running-require alpha pa)
  (installed-provide beta pa)
  (running-require beta pb)
  (installed-provide alpha pb)
  (= (instance-number) 0)
 )
 (:htn
  :tasks (run alpha) (run beta)
  :ordering ()
  :constraints ()
 )
))");
}

// The same shape with both requirements at the installed state: no instance
// can ever leave uninstalled, whatever the instance bound.
inline Problem deadlockedCycleProblem() {
    return parseProblem(R"((define (problem deadlock)
 (:domain deployment)
 (:objects
  alpha beta - component
  pa pb - port
 )
 (:init
  (installed-require alpha pa)
  (installed-provide beta pa)
  (installed-require beta pb)
  (installed-provide alpha pb)
  (= (instance-number) 0)
 )
 (:htn
  :tasks (run alpha) (run beta)
  :ordering ()
  :constraints ()
 )
))");
}

// One component, no ports.
inline Problem trivialProblem() {
    return parseProblem(R"((define (problem solo)
 (:domain deployment)
 (:objects
  solo - component
 )
 (:init
  (= (instance-number) 0)
 )
 (:htn
  :tasks (run solo)
  :ordering ()
  :constraints ()
 )
))");
}

}  // namespace deploy::testing

#endif
