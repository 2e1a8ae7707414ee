from terms.term import *
from terms.unification import *
