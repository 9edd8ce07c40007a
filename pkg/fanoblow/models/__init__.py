"""
fanoblow データモデルパッケージ
"""
