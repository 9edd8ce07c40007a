"""
fanoblow: 二重ブローアップの交点数と弱 Fano 分類
"""
