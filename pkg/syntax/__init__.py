from syntax.grammar import *
from syntax.parser import *
from syntax.printer import *
