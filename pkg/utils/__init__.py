from utils.files import *
from utils.other import *
