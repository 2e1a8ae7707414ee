from cli.run import *
from cli.report import *
