"""
fanoblow 設定パッケージ
"""
