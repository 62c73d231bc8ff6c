"""循环 r 集合 Douglas-Rachford 凸可行性求解器"""

__version__ = "0.1.0"
__author__ = "Cyclic DR Solver Team"
